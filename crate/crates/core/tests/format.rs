use std::path::PathBuf;

use ainf_core::auslander::AuslanderCategory;
use ainf_core::corpus;
use ainf_core::filtration::{appendix_filtration, degree_filtration};
use ainf_core::format::{category_to_spec, parse_cochain_spec, parse_spec, to_json, SpecError};
use ainf_core::hochschild::hochschild_differential;
use ainf_core::AInfCategory;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).unwrap()
}

/// Corpus categories shipped as files, with the in-memory constructor.
fn shipped() -> Vec<(&'static str, AInfCategory)> {
    let mut v = corpus::associative_corpus();
    v.extend([
        ("toy", corpus::toy()),
        ("nonassoc", corpus::nonassoc()),
        ("small_dg", corpus::small_dg()),
        ("two_degree_chain", corpus::two_degree_chain()),
        ("a2", corpus::a2_category()),
    ]);
    v
}

fn round_trip(c: &AInfCategory, extra: Option<&ainf_core::filtration::Filtration>) {
    let text = to_json(&category_to_spec(c, extra, None));
    let loaded = parse_spec(&text).unwrap().load().unwrap();
    assert_eq!(&loaded.category, c);
    let again = to_json(&category_to_spec(&loaded.category, loaded.filtration.as_ref(), None));
    assert_eq!(again, text);
}

#[test]
fn corpus_files_match_constructors() {
    if std::env::var_os("AINF_WRITE_CORPUS").is_some() {
        for (name, c) in shipped() {
            if name != "toy" && name != "nonassoc" {
                std::fs::write(corpus_dir().join(format!("{name}.json")), to_json(&category_to_spec(&c, None, None))).unwrap();
            }
        }
    }
    for (name, c) in shipped() {
        let loaded = parse_spec(&read(&format!("{name}.json"))).unwrap().load().unwrap();
        assert_eq!(loaded.category, c, "{name}");
    }
}

#[test]
fn toy_fixture_shape() {
    let spec = parse_spec(&read("toy.json")).unwrap();
    assert_eq!(spec.basis.len(), 3);
    assert_eq!(spec.multiplications[0].entries.len(), 9);
    assert_eq!(spec.multiplications[1].entries.len(), 1);
    let w = spec.load().unwrap();
    assert_eq!(w.kappa, Some(1));
    assert!(w.category.check_stasheff(None).passed());
}

#[test]
fn serialization_round_trips() {
    for (_, c) in shipped() {
        round_trip(&c, None);
    }
    let r = corpus::toy();
    let (f, _) = appendix_filtration(&r, 1).unwrap();
    round_trip(&r, Some(&f));
    round_trip(&r, Some(&degree_filtration(&r).unwrap()));
    let g = AuslanderCategory::build(&r, &f).unwrap();
    round_trip(g.gamma(), None);
}

#[test]
fn unknown_label_is_named() {
    let text = read("nonassoc.json").replace(r#""output": { "y": "1" } },
        { "inputs": ["x", "y"]"#, r#""output": { "z": "1" } },
        { "inputs": ["x", "y"]"#);
    let err = parse_spec(&text).unwrap().load().unwrap_err();
    match &err {
        SpecError::UnknownLabel { label, context } => {
            assert_eq!(label, "z");
            assert!(context.contains("multiplications[0].entries[5]"), "{context}");
        }
        e => panic!("unexpected {e}"),
    }
    assert!(err.to_string().contains("\"z\""));
}

#[test]
fn strict_schema_and_scalars() {
    let extra = read("toy.json").replace(r#""field": "QQ","#, r#""field": "QQ", "colour": "red","#);
    assert!(matches!(parse_spec(&extra), Err(SpecError::Json { .. })));
    let float = read("toy.json").replace(r#"{ "t": "1" } }
      ]"#, r#"{ "t": "0.5" } }
      ]"#);
    assert!(matches!(parse_spec(&float).unwrap().load(), Err(SpecError::Scalar { .. })));
    let composite = read("toy.json").replace(r#""QQ""#, r#""GF(9)""#);
    assert!(matches!(parse_spec(&composite).unwrap().load(), Err(SpecError::Field(_))));
    let dup = read("toy.json").replace(r#""name": "eps""#, r#""name": "1""#);
    assert!(parse_spec(&dup).unwrap().load().is_err());
}

#[test]
fn empty_tables_are_valid() {
    let text = r#"{ "field": "GF(5)", "basis": [ { "name": "1", "degree": 0 } ], "units": { "*": "1" } }"#;
    let w = parse_spec(text).unwrap().load().unwrap();
    assert!(w.category.ops().is_empty());
    assert!(!w.category.validate_structure().passed(), "unit laws are not implied");
}

#[test]
fn cochain_file_loads() {
    let c = corpus::dual_numbers();
    let (m, eta) = parse_cochain_spec(&read("dual_numbers_eta.json")).unwrap().load(&c).unwrap();
    assert_eq!(m.dim(), 2);
    assert!(hochschild_differential(&c, &m, &eta).unwrap().is_zero());
    let spec = ainf_core::format::CochainSpec::from_cochain(&c, &m, "diagonal", &eta);
    assert_eq!(spec.load(&c).unwrap().1, eta);
}
