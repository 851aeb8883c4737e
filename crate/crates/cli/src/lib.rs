//! Manifest-driven front end: parse a manifest, build its algebras over the
//! declared field, run the tasks and produce a deterministic report.

/// Runs `body` with `$f` bound to the scalar type of the declared field.
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            $crate::FieldSpec::Rationals => {
                type $f = semifiber::Q;
                $body
            }
            $crate::FieldSpec::Prime(p) => with_prime!(p, $f => $body; 2, 3, 5, 7, 11, 101, 32003, 65521),
        }
    };
}

macro_rules! with_prime {
    ($p:expr, $f:ident => $body:expr; $($prime:literal),*) => {
        match $p {
            $($prime => {
                type $f = semifiber::Fp<$prime>;
                $body
            })*
            other => unreachable!("GF({other}) passed validation"),
        }
    };
}

pub mod manifest;
pub mod report;
pub mod tasks;
pub mod validate;
pub mod workspace;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use semifiber::Scalar;

pub use manifest::{parse_manifest, FieldSpec, Manifest, ManifestError};
pub use report::{Options, ReportDocument, TaskReport};
pub use tasks::TaskError;
pub use validate::validate;

use workspace::Workspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    /// 1 for input errors, 2 for internal invariant failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<ManifestError> for CliError {
    fn from(e: ManifestError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TaskError> for CliError {
    fn from(e: TaskError) -> Self {
        match e {
            TaskError::Input { .. } => CliError::Input(e.to_string()),
            TaskError::Internal { .. } => CliError::Internal(e.to_string()),
        }
    }
}

/// Parses and validates, including the field-specific checks (relations
/// parse, are homogeneous and have no constant term).
pub fn check_manifest(text: &str) -> Result<Manifest, CliError> {
    let m = parse_manifest(text)?;
    validate(&m)?;
    with_field!(m.field.value, F => Workspace::<F>::build(&m).map(|_| ()))?;
    Ok(m)
}

fn run_all<F: Scalar>(m: &Manifest, opts: &Options, parallel: bool) -> Result<Vec<TaskReport>, CliError> {
    let ws = Workspace::<F>::build(m)?;
    let run_one = |i: usize| -> Result<TaskReport, CliError> {
        let task = &m.tasks[i];
        match catch_unwind(AssertUnwindSafe(|| tasks::run_task(m, &ws, task, opts))) {
            Ok(r) => Ok(r?),
            Err(_) => Err(CliError::Internal(format!("{}: `{}` panicked", task.procedure.pos, task.procedure.value))),
        }
    };
    if !parallel || m.tasks.len() < 2 {
        return (0..m.tasks.len()).map(run_one).collect();
    }
    let slots: Vec<Mutex<Option<Result<TaskReport, CliError>>>> = m.tasks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(2, |n| n.get()).min(m.tasks.len());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= m.tasks.len() {
                    break;
                }
                *slots[i].lock().unwrap() = Some(run_one(i));
            });
        }
    });
    // Report the first failure in manifest order, as a sequential run would.
    slots.into_iter().map(|s| s.into_inner().unwrap().expect("every task ran")).collect()
}

/// Parses, validates and runs every task of `text`. With `parallel` the
/// tasks run on several threads; the report is identical either way.
pub fn run_manifest(text: &str, opts: &Options, parallel: bool) -> Result<ReportDocument, CliError> {
    let m = parse_manifest(text)?;
    validate(&m)?;
    let tasks = with_field!(m.field.value, F => run_all::<F>(&m, opts, parallel))?;
    Ok(ReportDocument::new(text, m.field.value.to_string(), opts.clone(), tasks))
}

/// Name of the field type a manifest field maps to.
pub fn field_name(spec: FieldSpec) -> String {
    with_field!(spec, F => F::field_name())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_supported_prime_dispatches() {
        for p in validate::SUPPORTED_PRIMES {
            assert_eq!(field_name(FieldSpec::Prime(p)), format!("GF({p})"));
        }
        assert_eq!(field_name(FieldSpec::Rationals), "QQ");
    }
}
