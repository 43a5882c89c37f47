//! CLI contract: golden reports, exit codes, JSON round trips, and the subcommand examples.

use crate::commands::{self, Flags, Session};
use crate::report::ReportFile;
use crate::spec_file::SpecFile;
use crate::{execute, run, Cli};
use clap::Parser;
use std::path::{Path, PathBuf};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> PathBuf {
    fixtures().join(format!("{}.json", name))
}

fn session(name: &str) -> Session {
    Session::load(&fixture(name), &Flags::default()).unwrap()
}

fn cli(args: &[&str]) -> String {
    let mut full = vec!["autvar"];
    full.extend_from_slice(args);
    run(&Cli::try_parse_from(full).unwrap()).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    execute(std::iter::once("autvar").chain(args.iter().copied())).code
}

/// Fixtures with a supported regime, i.e. everything with a golden report.
fn supported() -> Vec<String> {
    let mut v: Vec<String> = std::fs::read_dir(fixtures().join("golden"))
        .unwrap()
        .map(|e| e.unwrap().path().file_stem().unwrap().to_string_lossy().into_owned())
        .collect();
    v.sort();
    v
}

// ---------------------------------------------------------------------------
// Golden reports

#[test]
fn golden_reports_are_byte_stable() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let names = ["e2", "e4", "three_variable", "family_a0_b0", "family_a0_b1", "family_a1_b0", "family_a1_b1", "y1_4_y2_2", "one_unit", "degenerate", "hyperbolic", "curve_genus", "reducible", "shifted"];
    for name in names {
        let path = fixture(name);
        let out = cli(&["analyze", path.to_str().unwrap(), "--json"]);
        assert_eq!(out, cli(&["analyze", path.to_str().unwrap(), "--json"]), "{} is not deterministic", name);
        let golden = fixtures().join("golden").join(format!("{}.json", name));
        if update {
            std::fs::write(&golden, &out).unwrap();
        }
        let expected = std::fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing golden {}", golden.display()));
        assert_eq!(out, expected, "golden mismatch for {}", name);
    }
    assert_eq!(supported().len(), names.len());
}

#[test]
fn report_round_trip() {
    for name in supported() {
        let r = commands::analyze(&session(&name)).unwrap();
        let back = ReportFile::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r, "{}", name);
        assert_eq!(back.to_json(), r.to_json());
    }
}

#[test]
fn spec_round_trip() {
    for entry in std::fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            let f = commands::read_spec(&path).unwrap();
            assert_eq!(SpecFile::from_json(&f.to_json()).unwrap(), f, "{}", path.display());
        }
    }
}

// ---------------------------------------------------------------------------
// Exit codes

#[test]
fn exit_code_contract() {
    for name in supported() {
        assert_eq!(exit_code(&["analyze", fixture(&name).to_str().unwrap()]), 0, "{}", name);
    }
    assert_eq!(exit_code(&["analyze", fixture("unit_weights").to_str().unwrap()]), 2);
    for entry in std::fs::read_dir(fixtures().join("invalid")).unwrap() {
        let path = entry.unwrap().path();
        assert_eq!(exit_code(&["analyze", path.to_str().unwrap()]), 1, "{}", path.display());
    }
    assert_eq!(exit_code(&["analyze", "/nonexistent/spec.json"]), 1);
    assert_eq!(exit_code(&["analyze", fixture("shifted").to_str().unwrap(), "--no-normalize"]), 1);
    assert_eq!(exit_code(&["frobnicate"]), 1);
    assert_eq!(exit_code(&["--help"]), 0);
}

#[test]
fn unit_weights_message() {
    let exit = execute(["autvar", "analyze", fixture("unit_weights").to_str().unwrap()]);
    assert_eq!(exit.code, 2);
    assert!(exit.stderr.contains("two unit weights: outside the supported structure theorems"), "{}", exit.stderr);
}

#[test]
fn invalid_messages_name_the_invariant() {
    let msg = |name: &str| match Session::load(&fixtures().join("invalid").join(format!("{}.json", name)), &Flags::default()) {
        Err(e) => e.to_string(),
        Ok(_) => panic!("{} accepted", name),
    };
    assert!(msg("float_coeff").contains("exact rational"));
    assert!(msg("non_monic").contains("monic"));
    assert!(msg("wrong_length").contains("len(weights)"));
    assert!(msg("low_degree").contains("z-degree"));
    assert!(msg("zero_weight").contains("positive"));
    assert!(msg("not_json").contains("JSON"));
}

// ---------------------------------------------------------------------------
// analyze

#[test]
fn e4_report_lists_four_elements() {
    let r = commands::analyze(&session("e4")).unwrap();
    let g = r.groups.g.as_ref().unwrap();
    let labels: Vec<&str> = g.elements.as_ref().unwrap().iter().map(|e| e.label.as_str()).collect();
    assert_eq!(labels, ["(id, 1, 1, 1)", "(id, -1, -1, -1)", "((12), 1, 1, -1)", "((12), -1, -1, 1)"]);
    let fp = r.finite_part.unwrap();
    assert_eq!(fp.order, 4);
    assert_eq!(fp.table.unwrap().len(), 4);
}

#[test]
fn family_a0_b0_is_two_dimensional_torus() {
    let r = commands::analyze(&session("family_a0_b0")).unwrap();
    assert_eq!(r.structure.evaluated, "(𝕂^×)²");
    assert!(cli(&["analyze", fixture("family_a0_b0").to_str().unwrap()]).contains("Aut ≅ (𝕂^×)²"));
}

#[test]
fn shifted_report_keeps_both_equations() {
    let r = commands::analyze(&session("shifted")).unwrap();
    assert_eq!(r.equation, "y1^2*y2^3 = z^3 + 3*z^2 + 1");
    assert_eq!(r.normalized_equation, "y1^2*y2^3 = z^3 - 3*z + 3");
    assert_eq!(r.z_shift.as_deref(), Some("1"));
}

#[test]
fn enum_bound_flag_limits_tables() {
    let path = fixture("e4");
    let out = cli(&["analyze", path.to_str().unwrap(), "--json", "--max-enum-order", "2"]);
    let r = ReportFile::from_json(&out).unwrap();
    assert!(r.finite_part.is_none());
}

// ---------------------------------------------------------------------------
// exp / apply

#[test]
fn exp_zero_is_identity() {
    let m = commands::exp(&session("e4"), "0").unwrap();
    assert!(m.images.iter().all(|i| i.image == i.var));
    assert!(m.verified);
}

#[test]
fn exp_rejects_h_outside_kernel() {
    assert!(commands::exp(&session("e4"), "z").is_err());
    assert!(commands::exp(&session("e4"), "x*y1").is_err());
}

#[test]
fn e2_exp_carries_typo_warning() {
    let m = commands::exp(&session("e2"), "y").unwrap();
    assert!(m.verified);
    assert!(m.warnings.iter().any(|w| w.contains("∂(z) = y1^2") && w.contains("∂(z) = y1")));
}

#[test]
fn apply_examples() {
    let s = session("e4");
    let r = commands::apply(&s, "((12), -1, -1, 1)", "y1 - y2").unwrap();
    assert_eq!(r.result, "y1 - y2");
    assert_eq!(commands::apply(&s, "((12), 1, 1, -1)", "y1 - y2").unwrap().result, "-y1 + y2");
    assert_eq!(commands::apply(&s, "identity", "x*z + y2^3").unwrap().result, "x*z + y2^3");
    assert_eq!(commands::apply(&s, "exp:y1 - 2*y2^2", "x*y1^2*y2^2 - z^3 - z - y1 + y2").unwrap().result, "0");
    assert_eq!(commands::apply(&s, "G[2]", "z").unwrap().result, "-z");
    assert_eq!(commands::apply(&s, "y1 -> -y2, y2 -> -y1", "y1").unwrap().result, "-y2");
}

#[test]
fn apply_errors() {
    let s = session("e4");
    assert!(commands::apply(&s, "G[9]", "z").is_err());
    assert!(commands::apply(&s, "no-such-generator", "z").is_err());
    assert!(commands::apply(&s, "((12), 1, 1, 1)", "z").is_err());
    assert!(commands::apply(&s, "y1 -> 2*y1", "z").is_err());
}

#[test]
fn apply_on_shifted_presentation() {
    let s = session("shifted");
    assert_eq!(commands::apply(&s, "y1 -> -y1", "y1*z").unwrap().result, "-z*y1");
    for g in commands::analyze(&s).unwrap().generators {
        let r = commands::apply(&s, &g.id, "z").unwrap();
        assert!(r.verified, "{}", g.id);
    }
}

// ---------------------------------------------------------------------------
// degree / gr / irreducible / genus

#[test]
fn degree_examples() {
    for name in ["e2", "e4", "three_variable"] {
        let s = session(name);
        assert_eq!(commands::degree(&s, "z").unwrap().degree, 1);
        assert_eq!(commands::degree(&s, "y1").unwrap().degree, 0);
        assert_eq!(commands::degree(&s, "x").unwrap().degree, s.spec.d);
    }
    assert!(commands::degree(&session("e4"), "0").is_err());
}

#[test]
fn gr_examples() {
    let s = session("e4");
    let g = commands::gr(&s, "x + z^2 + y1").unwrap();
    assert_eq!(g.leading_form, "x");
    assert_eq!(g.graded_relation.as_deref(), Some("x*y1^2*y2^2 - z^3 = 0"));
    assert!(commands::gr(&s, "0").is_err());
}

#[test]
fn irreducible_and_genus_commands() {
    let r = commands::irreducible(&session("reducible")).unwrap();
    assert_eq!(r.l, Some(2));
    assert_eq!(r.product_verified, Some(true));
    assert!(commands::irreducible(&session("e4")).unwrap().irreducible);
    assert_eq!(commands::genus_of(&session("curve_genus")).unwrap().genus, 3);
    assert!(commands::genus_of(&session("e4")).is_err());
    assert_eq!(cli(&["genus", fixture("curve_genus").to_str().unwrap()]), "3\n");
}
