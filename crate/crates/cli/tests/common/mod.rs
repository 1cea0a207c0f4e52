#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use entangle_core::majorana::{coherent_state, SpherePoint};
use entangle_core::qutrit::{build_normal_form_state, phi_family, NormalFormCoefficients};
use entangle_core::state::{bell_state, ghz_state, w_state, BellState};
use entangle_core::{Complex64, StateVector64};
use serde_json::Value;
use tempfile::TempDir;

pub const GOLDEN_TOL: f64 = 1e-10;

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entangle"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

pub fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exited normally")
}

pub struct Entry {
    pub name: &'static str,
    pub gen: &'static [&'static str],
    pub symmetric_qubits: bool,
}

pub const CORPUS: &[Entry] = &[
    Entry { name: "bell_phi_plus", gen: &["bell", "phi-plus"], symmetric_qubits: true },
    Entry { name: "bell_psi_plus", gen: &["bell", "psi-plus"], symmetric_qubits: true },
    Entry { name: "bell_phi_minus", gen: &["bell", "phi-minus"], symmetric_qubits: true },
    Entry { name: "bell_psi_minus", gen: &["bell", "psi-minus"], symmetric_qubits: false },
    Entry { name: "ghz2", gen: &["ghz", "--n", "2"], symmetric_qubits: true },
    Entry { name: "ghz3", gen: &["ghz", "--n", "3"], symmetric_qubits: true },
    Entry { name: "ghz4", gen: &["ghz", "--n", "4"], symmetric_qubits: true },
    Entry { name: "w", gen: &["w"], symmetric_qubits: true },
    Entry { name: "zero3", gen: &["coherent", "--n", "3"], symmetric_qubits: true },
    Entry {
        name: "coherent4",
        gen: &["coherent", "--n", "4", "--theta", "1.2", "--phi", "-0.7"],
        symmetric_qubits: true,
    },
    Entry {
        name: "qutrit_nf",
        gen: &["qutrit-nf", "--a1", "1", "--a2", "0.5", "--a3", "-0.25,0.5"],
        symmetric_qubits: false,
    },
    Entry { name: "phi", gen: &["phi", "--alpha", "1", "--beta", "0.5"], symmetric_qubits: false },
];

pub fn expected_state(name: &str) -> StateVector64 {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    match name {
        "bell_phi_plus" => bell_state(BellState::PhiPlus),
        "bell_psi_plus" => bell_state(BellState::PsiPlus),
        "bell_phi_minus" => bell_state(BellState::PhiMinus),
        "bell_psi_minus" => bell_state(BellState::PsiMinus),
        "ghz2" => ghz_state(2).unwrap(),
        "ghz3" => ghz_state(3).unwrap(),
        "ghz4" => ghz_state(4).unwrap(),
        "w" => w_state(),
        "zero3" => StateVector64::basis(&[2, 2, 2], &[0, 0, 0]).unwrap(),
        "coherent4" => coherent_state(&SpherePoint::new(1.2, -0.7), 4).unwrap().to_state().unwrap(),
        "qutrit_nf" => {
            build_normal_form_state(&NormalFormCoefficients::new(c(1.0, 0.0), c(0.5, 0.0), c(-0.25, 0.5)).unwrap())
                .unwrap()
        }
        "phi" => phi_family(c(1.0, 0.0), c(0.5, 0.0)).unwrap().state,
        _ => unreachable!(),
    }
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn json_close(actual: &Value, expected: &Value, path: &str, errors: &mut Vec<String>) {
    match (actual, expected) {
        (Value::Number(a), Value::Number(e)) => {
            let (a, e) = (a.as_f64().unwrap(), e.as_f64().unwrap());
            if (a - e).abs() > GOLDEN_TOL * e.abs().max(1.0) {
                errors.push(format!("{path}: {a} != {e}"));
            }
        }
        (Value::Array(a), Value::Array(e)) => {
            if a.len() != e.len() {
                errors.push(format!("{path}: length {} != {}", a.len(), e.len()));
                return;
            }
            for (k, (x, y)) in a.iter().zip(e).enumerate() {
                json_close(x, y, &format!("{path}[{k}]"), errors);
            }
        }
        (Value::Object(a), Value::Object(e)) => {
            let mut ka: Vec<_> = a.keys().collect();
            let mut ke: Vec<_> = e.keys().collect();
            ka.sort();
            ke.sort();
            if ka != ke {
                errors.push(format!("{path}: keys {ka:?} != {ke:?}"));
                return;
            }
            for k in ke {
                json_close(&a[k], &e[k], &format!("{path}.{k}"), errors);
            }
        }
        (a, e) if a == e => {}
        (a, e) => errors.push(format!("{path}: {a} != {e}")),
    }
}

/// Compares JSON output with its golden file, or rewrites the file when
/// `UPDATE_GOLDEN` is set.
pub fn compare_golden(file: &str, stdout: &str) -> Result<(), String> {
    let actual: Value = serde_json::from_str(stdout).map_err(|e| format!("{file}: stdout is not JSON: {e}"))?;
    let path = golden_dir().join(file);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::create_dir_all(golden_dir()).unwrap();
        fs::write(&path, serde_json::to_string_pretty(&actual).unwrap() + "\n").unwrap();
        return Ok(());
    }
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e} (run with UPDATE_GOLDEN=1)", path.display()))?;
    let expected: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut errors = Vec::new();
    json_close(&actual, &expected, "$", &mut errors);
    if errors.is_empty() {
        Ok(())
    } else {
        Err(format!("{file} differs from golden:\n{}", errors.join("\n")))
    }
}

pub fn check_golden(file: &str, stdout: &str) {
    if let Err(e) = compare_golden(file, stdout) {
        panic!("{e}");
    }
}

pub fn by_name(name: &str) -> &'static Entry {
    CORPUS.iter().find(|e| e.name == name).unwrap()
}

pub fn generate(dir: &TempDir, e: &Entry) -> PathBuf {
    let path = dir.path().join(format!("{}.json", e.name));
    let mut args = vec!["gen"];
    args.extend_from_slice(e.gen);
    args.extend_from_slice(&["-o", path.to_str().unwrap()]);
    ok(&args);
    path
}
