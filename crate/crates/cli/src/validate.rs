//! Field-independent checks: names resolve, procedures and keys exist,
//! numeric parameters are numbers.

use std::collections::BTreeSet;

use crate::manifest::{FieldSpec, Manifest, ManifestError, TaskBlock};

/// Primes accepted by `field GF(p)`. Each one is a compile-time field.
pub const SUPPORTED_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 101, 32003, 65521];

/// Keys shared by the procedures that take a degree or search bound.
const NUMERIC_KEYS: [&str; 5] = ["hdeg", "tdeg", "bound", "n", "length"];

/// Keys naming algebras.
const ALGEBRA_KEYS: [&str; 4] = ["algebra", "source", "left", "right"];

pub struct Procedure {
    pub name: &'static str,
    pub keys: &'static [&'static str],
    pub required: &'static [&'static str],
    /// Whether the task needs the `algebra` key (defaulted when the manifest
    /// declares a single algebra).
    pub uses_algebra: bool,
    pub summary: &'static str,
}

const fn proc(
    name: &'static str,
    keys: &'static [&'static str],
    required: &'static [&'static str],
    uses_algebra: bool,
    summary: &'static str,
) -> Procedure {
    Procedure { name, keys, required, uses_algebra, summary }
}

pub const PROCEDURES: &[Procedure] = &[
    proc("betti", &["algebra", "module", "hdeg", "tdeg"], &[], true, "graded Betti numbers of a module"),
    proc("hilbert", &["algebra", "tdeg"], &[], true, "Hilbert function of an algebra"),
    proc("poincare", &["algebra", "ideal", "module", "hdeg", "tdeg"], &["ideal"], true, "Poincare series factorization test"),
    proc("thm_test", &["algebra", "ideal"], &["ideal"], true, "minimal generator test for liftability"),
    proc("ext2", &["algebra", "ideal", "tdeg"], &[], true, "vanishing of Ext^2(k, k) over R/I"),
    proc("regular", &["algebra", "elements"], &["elements"], true, "regular sequence check"),
    proc("cor44", &["algebra", "element", "n"], &["element", "n"], true, "flatness over k[x]/(x^(n+1)) via annihilators"),
    proc(
        "check_lift",
        &["algebra", "ideal", "candidate", "length", "hdeg", "tdeg"],
        &["ideal", "candidate"],
        true,
        "verify a candidate lifting of the resolution of k",
    ),
    proc("socle", &["algebra", "ideal", "bound"], &["ideal"], true, "decide liftability when m*I = 0"),
    proc("section", &["algebra", "ideal", "bound"], &["ideal"], true, "search for a section of R -> R/I"),
    proc("retraction", &["algebra", "sub", "source", "images", "bound"], &[], true, "search for a retraction of T -> R"),
    proc("flatness", &["algebra", "source", "images", "hdeg", "tdeg"], &["source"], true, "Tor flatness certificate"),
    proc("mt_generates", &["algebra", "source", "images"], &["source"], true, "whether m_T R = m_R"),
    proc("harness", &["algebra", "source", "images", "hdeg", "bound"], &["source"], true, "cross-check the three equivalent conditions"),
    proc("semifiber", &["action", "bound"], &["action"], false, "semi-fiber product of an action table"),
    proc("fiber_product", &["left", "right", "tdeg"], &["left", "right"], false, "fiber product over k"),
    proc("tensor", &["left", "right", "tdeg"], &["left", "right"], false, "tensor product over k"),
    proc("trivial_extension", &["algebra", "module", "tdeg"], &[], true, "idealization R x M"),
    proc("psi", &["algebra", "source", "images", "bound"], &["source"], true, "isomorphism between semi-fiber and fiber product"),
    proc("decompose", &["algebra", "element"], &["element"], true, "scalar and maximal ideal parts of an element"),
];

pub fn procedure(name: &str) -> Option<&'static Procedure> {
    PROCEDURES.iter().find(|p| p.name == name)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_field(m: &Manifest) -> Result<(), ManifestError> {
    if let FieldSpec::Prime(p) = m.field.value {
        if !is_prime(p) {
            return Err(ManifestError::semantic(m.field.pos, format!("{p} is not prime")));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            let list: Vec<String> = SUPPORTED_PRIMES.iter().map(|p| p.to_string()).collect();
            return Err(ManifestError::semantic(
                m.field.pos,
                format!("GF({p}) is not available; supported primes are {}", list.join(", ")),
            ));
        }
    }
    Ok(())
}

fn check_blocks(m: &Manifest) -> Result<(), ManifestError> {
    let mut names = BTreeSet::new();
    for a in &m.algebras {
        if !names.insert(a.name.value.as_str()) {
            return Err(ManifestError::semantic(a.name.pos, format!("algebra `{}` is declared twice", a.name.value)));
        }
        let mut vars = BTreeSet::new();
        for v in &a.vars {
            if !vars.insert(v.name.value.as_str()) {
                return Err(ManifestError::semantic(v.name.pos, format!("variable `{}` is declared twice", v.name.value)));
            }
            if v.weight.value == 0 {
                return Err(ManifestError::semantic(
                    v.weight.pos,
                    format!("variable `{}` has weight 0; weights must be positive", v.name.value),
                ));
            }
        }
    }
    let mut actions = BTreeSet::new();
    for a in &m.actions {
        if !actions.insert(a.name.value.as_str()) {
            return Err(ManifestError::semantic(a.name.pos, format!("action `{}` is declared twice", a.name.value)));
        }
        for side in [&a.r, &a.s] {
            if m.algebra(&side.value).is_none() {
                return Err(ManifestError::semantic(side.pos, format!("unknown algebra `{}`", side.value)));
            }
        }
    }
    Ok(())
}

fn check_task(m: &Manifest, t: &TaskBlock) -> Result<(), ManifestError> {
    let name = &t.procedure;
    let Some(p) = procedure(&name.value) else {
        return Err(ManifestError::semantic(name.pos, format!("unknown procedure `{}`", name.value)));
    };
    for param in &t.params {
        let key = &param.key;
        if !p.keys.contains(&key.value.as_str()) {
            return Err(ManifestError::semantic(
                key.pos,
                format!("unknown key `{}` for `{}`; expected one of {}", key.value, p.name, p.keys.join(", ")),
            ));
        }
        if NUMERIC_KEYS.contains(&key.value.as_str()) && param.value.text.parse::<u32>().is_err() {
            return Err(ManifestError::semantic(
                param.value.pos(),
                format!("`{}` must be a nonnegative integer, found `{}`", key.value, param.value.text),
            ));
        }
        if ALGEBRA_KEYS.contains(&key.value.as_str()) && m.algebra(&param.value.text).is_none() {
            return Err(ManifestError::semantic(param.value.pos(), format!("unknown algebra `{}`", param.value.text)));
        }
        if key.value == "action" && m.action(&param.value.text).is_none() {
            return Err(ManifestError::semantic(param.value.pos(), format!("unknown action `{}`", param.value.text)));
        }
    }
    for req in p.required {
        if t.get(req).is_none() {
            return Err(ManifestError::semantic(name.pos, format!("`{}` needs the key `{req}`", p.name)));
        }
    }
    if p.uses_algebra && t.get("algebra").is_none() && m.algebras.len() != 1 {
        return Err(ManifestError::semantic(
            name.pos,
            format!("`{}` needs `algebra = NAME` when the manifest declares {} algebras", p.name, m.algebras.len()),
        ));
    }
    if p.name == "retraction" && (t.get("sub").is_some() == t.get("source").is_some()) {
        return Err(ManifestError::semantic(name.pos, "`retraction` needs exactly one of `sub` and `source`"));
    }
    if t.get("images").is_some() && t.get("source").is_none() {
        return Err(ManifestError::semantic(name.pos, "`images` needs `source`"));
    }
    Ok(())
}

/// Checks everything that does not depend on the coefficient field.
pub fn validate(m: &Manifest) -> Result<(), ManifestError> {
    check_field(m)?;
    check_blocks(m)?;
    for t in &m.tasks {
        check_task(m, t)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifest::parse_manifest;

    fn check(src: &str) -> Result<(), ManifestError> {
        validate(&parse_manifest(src).unwrap())
    }

    #[test]
    fn accepts_plain_manifest() {
        check("field GF(32003); algebra R { vars x, y; rels x*y; } task betti { hdeg = 4; }").unwrap();
    }

    #[test]
    fn rejects_unknown_names() {
        let e = check("field QQ; algebra R { vars x; } task betti { degree = 4; }").unwrap_err();
        assert!(e.to_string().contains("unknown key `degree`"), "{e}");
        let e = check("field QQ; algebra R { vars x; } task frobnicate { }").unwrap_err();
        assert_eq!(e.to_string(), "1:38: unknown procedure `frobnicate`");
        assert!(check("field QQ; algebra R { vars x; } task betti { algebra = S; }").is_err());
        assert!(check("field QQ; algebra R { vars x; } action A { R on S; }").is_err());
    }

    #[test]
    fn rejects_bad_fields_and_weights() {
        assert!(check("field GF(9);").unwrap_err().to_string().contains("not prime"));
        assert!(check("field GF(13);").unwrap_err().to_string().contains("supported primes"));
        assert!(check("field QQ; algebra R { vars x(0); }").unwrap_err().to_string().contains("weight 0"));
    }

    #[test]
    fn algebra_key_defaults_only_when_unambiguous() {
        let src = "field QQ; algebra R { vars x; } algebra S { vars y; } task hilbert { }";
        assert!(check(src).is_err());
        check("field QQ; algebra R { vars x; } algebra S { vars y; } task hilbert { algebra = S; }").unwrap();
    }

    #[test]
    fn primes_table() {
        assert!(SUPPORTED_PRIMES.iter().all(|&p| is_prime(p)));
    }
}
