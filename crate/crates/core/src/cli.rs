//! Command-line front end.
//!
//! Every command prints a JSON report on standard output and diagnostics on
//! standard error. Exit codes: 0 success, 1 mathematical failure, 2 input error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::appell_humbert::{is_ample, AlternatingForm};
use crate::document::{semiabelian_value, BundleDoc, Document, TorusDoc};
use crate::error::Error;
use crate::family::{assemble_global_pairing, base_change, check_global_pairing, validate_family};
use crate::random::{random_semiabelian, FormKind};
use crate::semiabelian::{polarization_from_bundle, verify_main_theorem_fiber, SemiabelianModel};
use crate::serde_util::int_matrix_value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "abelpol", version, about = "Polarizations of semi-abelian fibers from Appell–Humbert data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a torus, bundle or semi-abelian document.
    Check { path: PathBuf },
    /// Assemble and test the polarization of a semi-abelian fiber.
    Polarize { path: PathBuf },
    /// Check a family, optionally after base change along a map.
    Family {
        path: PathBuf,
        #[arg(long = "base-change", value_name = "MAP")]
        base_change: Option<PathBuf>,
    },
    /// Print a seeded random semi-abelian document.
    Random {
        #[arg(long)]
        genus: usize,
        #[arg(long = "toric-rank")]
        toric_rank: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        ample: bool,
    },
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(code: i32, report: &Value, diagnostic: impl Into<String>) -> Self {
        let mut stdout = serde_json::to_string_pretty(report).expect("reports serialize");
        stdout.push('\n');
        Self {
            code,
            stdout,
            stderr: diagnostic.into(),
        }
    }

    fn input_error(e: impl std::fmt::Display) -> Self {
        Self::report(
            EXIT_INPUT,
            &json!({"error": e.to_string()}),
            format!("error: {e}\n"),
        )
    }
}

pub fn run(command: &Command) -> Outcome {
    match command {
        Command::Check { path } => cmd_check(path),
        Command::Polarize { path } => cmd_polarize(path),
        Command::Family { path, base_change } => cmd_family(path, base_change.as_deref()),
        Command::Random {
            genus,
            toric_rank,
            seed,
            ample,
        } => cmd_random(*genus, *toric_rank, *seed, *ample),
    }
}

fn load(path: &Path) -> Result<Document, Outcome> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Outcome::input_error(format!("cannot read {}: {e}", path.display())))?;
    Document::parse(&text).map_err(Outcome::input_error)
}

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

impl Check {
    fn pass(name: &'static str) -> Self {
        Self { name, ok: true, detail: None }
    }

    fn fail(name: &'static str, detail: impl ToString) -> Self {
        Self {
            name,
            ok: false,
            detail: Some(detail.to_string()),
        }
    }

    fn skipped(name: &'static str) -> Self {
        Self::fail(name, "not checked: an earlier invariant failed")
    }
}

fn torus_checks(t: &TorusDoc, out: &mut Vec<Check>) -> bool {
    match t.build() {
        Ok(_) => {
            out.push(Check::pass("complex_structure"));
            true
        }
        Err(e) => {
            out.push(Check::fail("complex_structure", e));
            false
        }
    }
}

fn bundle_checks(t: &TorusDoc, b: &BundleDoc, out: &mut Vec<Check>) {
    let torus_ok = torus_checks(t, out);
    let alternating = b.e.is_alternating();
    out.push(if alternating {
        Check::pass("alternating")
    } else {
        Check::fail("alternating", "E is not alternating")
    });
    if torus_ok && alternating {
        let torus = t.build().expect("checked above");
        let form = AlternatingForm::new(&torus, b.e.clone()).expect("checked above");
        out.push(match form.compatibility_witness() {
            None => Check::pass("compatibility"),
            Some((i, j)) => Check::fail("compatibility", Error::Incompatible { i, j }),
        });
    } else {
        out.push(Check::skipped("compatibility"));
    }
    let zero = num_rational::BigRational::from_integer(0.into());
    let one = num_rational::BigRational::from_integer(1.into());
    match b.rho.iter().position(|a| a < &zero || a >= &one) {
        None => out.push(Check::pass("angles")),
        Some(k) => out.push(Check::fail("angles", format!("angle {k} is outside [0, 1)"))),
    }
}

pub fn cmd_check(path: &Path) -> Outcome {
    let doc = match load(path) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let mut checks = Vec::new();
    match &doc {
        Document::Torus(t) => {
            torus_checks(t, &mut checks);
        }
        Document::Bundle { torus, bundle } => bundle_checks(torus, bundle, &mut checks),
        Document::Semiabelian(s) => bundle_checks(&s.abelian, &s.bundle, &mut checks),
        other => {
            return Outcome::input_error(format!(
                "check expects a torus, bundle or semiabelian document, got {}",
                other.kind()
            ))
        }
    }
    let valid = checks.iter().all(|c| c.ok);
    let diagnostics: String = checks
        .iter()
        .filter_map(|c| c.detail.as_ref().map(|d| format!("{}: {d}\n", c.name)))
        .collect();
    Outcome::report(
        if valid { EXIT_OK } else { EXIT_FAILURE },
        &json!({"kind": doc.kind(), "valid": valid, "checks": checks}),
        diagnostics,
    )
}

fn build_fiber(doc: &Document) -> Result<SemiabelianModel, Outcome> {
    let built = match doc {
        Document::Semiabelian(s) => s.build(),
        Document::Bundle { torus, bundle } => torus
            .build()
            .and_then(|t| bundle.build(&t))
            .map(SemiabelianModel::abelian),
        other => {
            return Err(Outcome::input_error(format!(
                "polarize expects a semiabelian document, got {}",
                other.kind()
            )))
        }
    };
    built.map_err(|e| {
        Outcome::report(
            EXIT_FAILURE,
            &json!({"error": e.to_string()}),
            format!("error: {e}\n"),
        )
    })
}

pub fn cmd_polarize(path: &Path) -> Outcome {
    let g = match load(path).and_then(|d| build_fiber(&d)) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let rep = verify_main_theorem_fiber(&g);
    let p = polarization_from_bundle(&g);
    let report = json!({
        "ample": rep.ample,
        "polarization": int_matrix_value(p.matrix()),
        "type": rep.polarization_type.iter().map(crate::serde_util::bigint_value).collect::<Vec<_>>(),
        "toric_rank": rep.toric_rank,
        "kernel_rank": rep.kernel_rank,
        "polarized": rep.polarized,
    });
    let diag = if rep.polarized {
        String::new()
    } else {
        format!(
            "not polarized: kernel has rank {}, weight sublattice has rank {}\n",
            rep.kernel_rank, rep.toric_rank
        )
    };
    Outcome::report(if rep.polarized { EXIT_OK } else { EXIT_FAILURE }, &report, diag)
}

pub fn cmd_family(path: &Path, map_path: Option<&Path>) -> Outcome {
    let doc = match load(path) {
        Ok(Document::Family(f)) => f,
        Ok(other) => return Outcome::input_error(format!("family expects a family document, got {}", other.kind())),
        Err(o) => return o,
    };
    let map = match map_path.map(load) {
        None => None,
        Some(Ok(Document::BaseMap(m))) => Some(m),
        Some(Ok(other)) => {
            return Outcome::input_error(format!("--base-change expects a base-map document, got {}", other.kind()))
        }
        Some(Err(o)) => return o,
    };
    let family = match doc.build() {
        Ok(f) => f,
        Err(e) => {
            return Outcome::report(
                EXIT_FAILURE,
                &json!({"passed": false, "error": e.to_string()}),
                format!("error: {e}\n"),
            )
        }
    };
    let mut diag = String::new();
    let validation = validate_family(&family);
    for v in &validation.violations {
        diag.push_str(&format!("violation: {}\n", v.reason));
    }
    let mut report = json!({"validation": validation});
    let mut passed = validation.valid;
    match assemble_global_pairing(&family) {
        Err(e) => {
            passed = false;
            diag.push_str(&format!("error: {e}\n"));
            let witness = match &e {
                Error::IncoherentFamily { index, src, dst, reason } => {
                    json!({"edge": index, "src": src, "dst": dst, "reason": reason})
                }
                other => json!({"reason": other.to_string()}),
            };
            report["assembly"] = json!({"ok": false, "witness": witness});
        }
        Ok(pairing) => {
            report["assembly"] = json!({"ok": true});
            let check = check_global_pairing(&family, &pairing);
            passed &= check.passed;
            report["pairing"] = serde_json::to_value(&check).expect("reports serialize");
            if let Some(map) = &map {
                match base_change(&family, &pairing, map) {
                    Err(e) => {
                        passed = false;
                        diag.push_str(&format!("error: {e}\n"));
                        report["base_change"] = json!({"ok": false, "error": e.to_string()});
                    }
                    Ok((f2, p2)) => {
                        let v2 = validate_family(&f2);
                        let c2 = check_global_pairing(&f2, &p2);
                        passed &= v2.valid && c2.passed;
                        report["base_change"] = json!({
                            "ok": v2.valid && c2.passed,
                            "validation": v2,
                            "pairing": c2,
                        });
                    }
                }
            }
        }
    }
    report["passed"] = json!(passed);
    Outcome::report(if passed { EXIT_OK } else { EXIT_FAILURE }, &report, diag)
}

pub fn cmd_random(genus: usize, toric_rank: usize, seed: u64, ample: bool) -> Outcome {
    if genus == 0 {
        return Outcome::input_error("--genus must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kind = if ample { FormKind::Ample } else { FormKind::Any };
    match random_semiabelian(&mut rng, genus, toric_rank, kind, None) {
        Ok(g) => {
            debug_assert!(!ample || is_ample(g.bundle()));
            Outcome::report(EXIT_OK, &semiabelian_value(&g), "")
        }
        Err(e) => Outcome::report(EXIT_FAILURE, &json!({"error": e.to_string()}), format!("error: {e}\n")),
    }
}

/// Entry point for the binary: parses arguments, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cli.command);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn temp_doc(name: &str, text: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("abelpol-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        p
    }

    #[test]
    fn check_exit_codes() {
        let ok = temp_doc("ok.json", r#"{"genus": 1, "J": [[0, -1], [1, 0]]}"#);
        assert_eq!(cmd_check(&ok).code, EXIT_OK);
        let id = temp_doc("id.json", r#"{"genus": 1, "J": [[1, 0], [0, 1]]}"#);
        let out = cmd_check(&id);
        assert_eq!(out.code, EXIT_FAILURE);
        assert!(out.stdout.contains("complex structure violation"));
        let bad = temp_doc("bad.json", r#"{"genus": 1, "J": [["1/0", 0], [0, 1]]}"#);
        assert_eq!(cmd_check(&bad).code, EXIT_INPUT);
        assert_eq!(cmd_check(Path::new("/nonexistent/x.json")).code, EXIT_INPUT);
    }

    #[test]
    fn random_is_deterministic_and_checks() {
        let a = cmd_random(2, 1, 42, true);
        assert_eq!(a, cmd_random(2, 1, 42, true));
        let p = temp_doc("rand.json", &a.stdout);
        assert_eq!(cmd_check(&p).code, EXIT_OK);
        assert_eq!(cmd_polarize(&p).code, EXIT_OK);
        assert_eq!(cmd_random(0, 1, 1, false).code, EXIT_INPUT);
    }
}
