use std::path::PathBuf;

use proptest::prelude::*;
use semifiber_cli::manifest::{
    ActionBlock, ActionEntry, AlgebraBlock, Param, Pos, RawText, Spanned, TaskBlock, VarDecl,
};
use semifiber_cli::{check_manifest, parse_manifest, FieldSpec, Manifest};

fn corpus() -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .filter(|p| p.extension().is_some_and(|e| e == "sf"))
        .map(|p| (p.display().to_string(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

#[test]
fn corpus_pretty_prints_to_a_fixed_point() {
    for (name, text) in corpus() {
        let m = check_manifest(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = m.to_string();
        let again = parse_manifest(&printed).unwrap_or_else(|e| panic!("{name}: reparse: {e}\n{printed}"));
        assert_eq!(again, m, "{name}");
        assert_eq!(again.to_string(), printed, "{name}");
        check_manifest(&printed).unwrap_or_else(|e| panic!("{name}: canonical form invalid: {e}"));
    }
}

#[test]
fn the_weighted_cusp_parses_and_a_constant_relation_does_not() {
    let cusp = "field QQ;\nalgebra C { vars x(3), y(2); rels x^2 - y^3; }\ntask hilbert { tdeg = 6; }\n";
    check_manifest(cusp).unwrap();
    let unit = "field QQ;\nalgebra C { vars x(1); rels x - 1; }\n";
    let err = check_manifest(unit).unwrap_err().to_string();
    assert!(err.starts_with("2:29:") && err.contains("constant term"), "{err}");
}

fn sp<T>(value: T) -> Spanned<T> {
    Spanned::new(value, Pos::default())
}

fn ident(prefix: &'static str) -> impl Strategy<Value = String> {
    (0u32..40).prop_map(move |i| format!("{prefix}{i}"))
}

/// Polynomial-like text in the normalized form the parser keeps.
fn poly_text() -> impl Strategy<Value = String> {
    let term = (1i64..20, ident("v"), 1u32..4).prop_map(|(c, v, e)| match (c, e) {
        (1, 1) => v,
        (1, e) => format!("{v}^{e}"),
        (c, 1) => format!("{c}*{v}"),
        (c, e) => format!("{c}*{v}^{e}"),
    });
    (proptest::collection::vec(term, 1..4), any::<bool>()).prop_map(|(terms, minus)| {
        terms.join(if minus { " - " } else { " + " })
    })
}

fn algebra() -> impl Strategy<Value = AlgebraBlock> {
    (
        ident("A"),
        proptest::collection::vec((ident("v"), 1u32..5), 0..4),
        proptest::collection::vec(poly_text(), 0..3),
        proptest::option::of(1u32..10),
    )
        .prop_map(|(name, vars, rels, trunc)| AlgebraBlock {
            name: sp(name),
            vars: vars.into_iter().map(|(n, w)| VarDecl { name: sp(n), weight: sp(w) }).collect(),
            rels: rels.iter().map(|r| RawText::new(r)).collect(),
            trunc: trunc.map(sp),
        })
}

fn action() -> impl Strategy<Value = ActionBlock> {
    (ident("act"), ident("A"), ident("A"), proptest::collection::vec((ident("v"), ident("v"), poly_text()), 0..3))
        .prop_map(|(name, r, s, entries)| ActionBlock {
            name: sp(name),
            r: sp(r),
            s: sp(s),
            entries: entries
                .into_iter()
                .map(|(x, y, v)| ActionEntry { x: sp(x), y: sp(y), value: RawText::new(&v) })
                .collect(),
        })
}

fn task() -> impl Strategy<Value = TaskBlock> {
    let value = prop_oneof![poly_text(), (0u32..50).prop_map(|n| n.to_string()), ident("A")];
    (
        prop_oneof![Just("betti"), Just("socle"), Just("harness"), Just("frobnicate")],
        proptest::collection::btree_map(ident("k"), value, 0..4),
    )
        .prop_map(|(proc_, params)| TaskBlock {
            procedure: sp(proc_.to_string()),
            params: params.into_iter().map(|(k, v)| Param { key: sp(k), value: RawText::new(&v) }).collect(),
        })
}

fn manifest() -> impl Strategy<Value = Manifest> {
    let field = prop_oneof![Just(FieldSpec::Rationals), (2u64..70000).prop_map(FieldSpec::Prime)];
    (
        field,
        proptest::collection::vec(algebra(), 0..3),
        proptest::collection::vec(action(), 0..2),
        proptest::collection::vec(task(), 0..4),
    )
        .prop_map(|(field, algebras, actions, tasks)| Manifest { field: sp(field), algebras, actions, tasks })
}

proptest! {
    #[test]
    fn syntax_tree_round_trips_through_the_printer(m in manifest()) {
        let printed = m.to_string();
        let parsed = parse_manifest(&printed).map_err(|e| TestCaseError::fail(format!("{e}\n{printed}")))?;
        prop_assert_eq!(&parsed, &m);
        prop_assert_eq!(parsed.to_string(), printed);
    }
}
