use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use entangle_core::bipartite::{bipartite_determinant, det_squared, scaled_determinant, schmidt_decompose, Cut};
use entangle_core::classify::{classify, ClassificationReport, DETERMINANT_NORMALIZATION_WARNING};
use entangle_core::hyperdet::{cayley_hyperdeterminant, ThreeQubitClass};
use entangle_core::io::{read_state, write_state, LoadedState};
use entangle_core::majorana::{
    classify_symmetric_with, coherent_state, SymmetricClassification, DEFAULT_SYMMETRY_TOL, DISCRIMINANT_ZERO_TOL,
};
use entangle_core::qutrit::{
    build_normal_form_state, normalized_delta, phi_family, qutrit_invariants, NormalFormCoefficients,
    QutritInvariantReport,
};
use entangle_core::sampling::{invariance_suite, GroupSpec, NamedInvariant};
use entangle_core::state::{bell_state, ghz_state, w_state, BellState};
use entangle_core::{Complex64, SpherePoint64, StateVector64};
use serde::Serialize;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::format::{cx_vec, sig, sig_complex, table, Cx};
use crate::{svg, BellArg, Command, GenState, GroupArg, InvariantArg};

pub fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Gen { state, output } => gen(state, output.as_deref()),
        Command::Schmidt { file, cut, tol, json } => schmidt(&file, cut, tol, json),
        Command::Det { file, json } => det(&file, json),
        Command::Hyperdet3q { file, tol, json } => hyperdet3q(&file, tol, json),
        Command::QutritInv { a1, a2, a3, alpha, beta, json } => qutrit_inv(a1, a2, a3, alpha, beta, json),
        Command::Majorana { file, csv, svg, cluster_tol, json } => {
            majorana(&file, csv.as_deref(), svg.as_deref(), cluster_tol, json)
        }
        Command::CheckInvariance { file, invariant, group, trials, seed, cut, index, json: _ } => {
            check_invariance(&file, invariant, group, trials, seed, cut, index)
        }
        Command::Classify { file, id, json } => classify_cmd(&file, id, json),
    }
}

fn load(path: &Path) -> CliResult<LoadedState<f64>> {
    let loaded = if path == Path::new("-") {
        read_state(io::stdin().lock())
    } else {
        let f = File::open(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        read_state(io::BufReader::new(f))
    };
    Ok(loaded?)
}

/// Standard output for `None` or `-`, otherwise a created file.
fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    match path {
        None => Ok(Box::new(io::stdout().lock())),
        Some(p) if p == Path::new("-") => Ok(Box::new(io::stdout().lock())),
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError::Validation(format!("{}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn emit_json<S: Serialize>(value: &S) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Numeric(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn emit_table(rows: &[(String, String)]) {
    print!("{}", table(rows));
}

fn row(k: impl Into<String>, v: impl Into<String>) -> (String, String) {
    (k.into(), v.into())
}

fn gen(spec: GenState, output: Option<&Path>) -> CliResult<()> {
    let state: StateVector64 = match spec {
        GenState::Bell { which } => bell_state(match which {
            BellArg::PhiPlus => BellState::PhiPlus,
            BellArg::PsiPlus => BellState::PsiPlus,
            BellArg::PhiMinus => BellState::PhiMinus,
            BellArg::PsiMinus => BellState::PsiMinus,
        }),
        GenState::Ghz { n } => ghz_state(n)?,
        GenState::W => w_state(),
        GenState::Coherent { n, theta, phi } => {
            if !(theta.is_finite() && phi.is_finite()) {
                return Err(CliError::Validation("theta and phi must be finite".into()));
            }
            coherent_state(&SpherePoint64::new(theta, phi), n)?.to_state()?
        }
        GenState::QutritNf { a1, a2, a3 } => build_normal_form_state(&NormalFormCoefficients::new(a1, a2, a3)?)?,
        GenState::Phi { alpha, beta } => phi_family(alpha, beta)?.state,
    };
    let mut out = sink(output)?;
    write_state(&state, &mut out)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SchmidtOut {
    dims: Vec<usize>,
    cut: Vec<usize>,
    complement: Vec<usize>,
    rank: usize,
    lambdas: Vec<f64>,
    singular_values: Vec<f64>,
    tolerance: f64,
    left_basis: Vec<Vec<Cx>>,
    right_basis: Vec<Vec<Cx>>,
    input_norm: f64,
}

fn schmidt(file: &Path, cut: Vec<usize>, tol: f64, json: bool) -> CliResult<()> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Validation(format!("tolerance must be finite and non-negative, got {tol}")));
    }
    let loaded = load(file)?;
    let state = &loaded.state;
    let cut = Cut::new(cut);
    let sd = schmidt_decompose(state, &cut, tol)?;
    let complement: Vec<usize> = (0..state.n_parties()).filter(|p| !cut.parties().contains(p)).collect();
    if json {
        return emit_json(&SchmidtOut {
            dims: state.dims().to_vec(),
            cut: cut.parties().to_vec(),
            complement,
            rank: sd.rank,
            lambdas: sd.lambdas.clone(),
            singular_values: sd.singular_values.clone(),
            tolerance: sd.tolerance_used,
            left_basis: sd.left_basis.iter().map(|v| cx_vec(v)).collect(),
            right_basis: sd.right_basis.iter().map(|v| cx_vec(v)).collect(),
            input_norm: loaded.input_norm,
        });
    }
    let mut rows = vec![
        row("dims", format!("{:?}", state.dims())),
        row("cut", format!("{:?} | {:?}", cut.parties(), complement)),
        row("rank", sd.rank.to_string()),
    ];
    for (k, l) in sd.lambdas.iter().enumerate() {
        rows.push(row(format!("lambda{k}"), sig(*l)));
    }
    rows.push(row("input_norm", sig(loaded.input_norm)));
    emit_table(&rows);
    Ok(())
}

fn det(file: &Path, json: bool) -> CliResult<()> {
    let state = load(file)?.state;
    let d = bipartite_determinant(&state)?;
    let sq = det_squared(&state)?;
    let scaled = scaled_determinant(&state)?;
    if json {
        return emit_json(&json!({
            "det": Cx::from(d),
            "det_abs": d.norm(),
            "det_squared": Cx::from(sq),
            "scaled_det": Cx::from(scaled),
            "warnings": [DETERMINANT_NORMALIZATION_WARNING],
        }));
    }
    eprintln!("warning: {DETERMINANT_NORMALIZATION_WARNING}");
    emit_table(&[
        row("det", sig_complex(d)),
        row("|det|", sig(d.norm())),
        row("det^2", sig_complex(sq)),
        row("2*det", sig_complex(scaled)),
    ]);
    Ok(())
}

fn hyperdet3q(file: &Path, tol: f64, json: bool) -> CliResult<()> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Validation(format!("tolerance must be finite and non-negative, got {tol}")));
    }
    let state = load(file)?.state;
    let d = cayley_hyperdeterminant(&state)?;
    let class = if d.norm() > tol { ThreeQubitClass::GhzClass } else { ThreeQubitClass::Degenerate };
    if json {
        return emit_json(&json!({
            "hyperdet": Cx::from(d),
            "hyperdet_abs": d.norm(),
            "class": class,
            "tolerance": tol,
        }));
    }
    emit_table(&[row("Det", sig_complex(d)), row("|Det|", sig(d.norm())), row("class", class.to_string())]);
    Ok(())
}

#[derive(Serialize)]
struct InvariantsOut {
    i6: Cx,
    i9: Cx,
    i12: Cx,
    j12: Cx,
    delta: Cx,
}

impl From<&QutritInvariantReport<Complex64>> for InvariantsOut {
    fn from(r: &QutritInvariantReport<Complex64>) -> Self {
        Self { i6: r.i6.into(), i9: r.i9.into(), i12: r.i12.into(), j12: r.j12.into(), delta: r.delta.into() }
    }
}

fn invariant_rows(r: &QutritInvariantReport<Complex64>) -> Vec<(String, String)> {
    vec![
        row("I6", sig_complex(r.i6)),
        row("I9", sig_complex(r.i9)),
        row("I12", sig_complex(r.i12)),
        row("J12", sig_complex(r.j12)),
        row("Delta", sig_complex(r.delta)),
    ]
}

fn qutrit_inv(
    a1: Option<Complex64>,
    a2: Option<Complex64>,
    a3: Option<Complex64>,
    alpha: Option<Complex64>,
    beta: Option<Complex64>,
    json: bool,
) -> CliResult<()> {
    let zero = Complex64::new(0.0, 0.0);
    if alpha.is_some() || beta.is_some() {
        let (alpha, beta) = (alpha.unwrap_or(zero), beta.unwrap_or(zero));
        let phi = phi_family(alpha, beta)?;
        if json {
            return emit_json(&json!({
                "family": "phi",
                "alpha": Cx::from(alpha),
                "beta": Cx::from(beta),
                "invariants": InvariantsOut::from(&phi.report),
                "delta_closed_form": Cx::from(phi.delta_closed_form),
                "delta_normalized": Cx::from(phi.delta_normalized),
            }));
        }
        let mut rows = invariant_rows(&phi.report);
        rows.push(row("Delta (closed form)", sig_complex(phi.delta_closed_form)));
        rows.push(row("Delta (normalized)", sig_complex(phi.delta_normalized)));
        emit_table(&rows);
        return Ok(());
    }
    if a1.is_none() && a2.is_none() && a3.is_none() {
        return Err(CliError::Validation("give --a1/--a2/--a3 or --alpha/--beta".into()));
    }
    let coeffs = NormalFormCoefficients::new(a1.unwrap_or(zero), a2.unwrap_or(zero), a3.unwrap_or(zero))?;
    let report = qutrit_invariants(&coeffs)?;
    let norm_sqr = 3.0 * (coeffs.a1.norm_sqr() + coeffs.a2.norm_sqr() + coeffs.a3.norm_sqr());
    let delta_normalized = normalized_delta(report.delta, norm_sqr);
    if json {
        return emit_json(&json!({
            "family": "normal-form",
            "a1": Cx::from(coeffs.a1),
            "a2": Cx::from(coeffs.a2),
            "a3": Cx::from(coeffs.a3),
            "invariants": InvariantsOut::from(&report),
            "delta_normalized": Cx::from(delta_normalized),
        }));
    }
    let mut rows = invariant_rows(&report);
    rows.push(row("Delta (normalized)", sig_complex(delta_normalized)));
    emit_table(&rows);
    Ok(())
}

#[derive(Serialize)]
struct StarRow {
    theta: f64,
    phi: f64,
    multiplicity: usize,
}

fn stars_of(sym: &SymmetricClassification<f64>) -> Vec<StarRow> {
    sym.constellation
        .stars
        .iter()
        .map(|s| StarRow { theta: s.theta, phi: s.phi, multiplicity: s.multiplicity })
        .collect()
}

fn majorana(
    file: &Path,
    csv_path: Option<&Path>,
    svg_path: Option<&Path>,
    cluster_tol: f64,
    json: bool,
) -> CliResult<()> {
    if !(cluster_tol.is_finite() && cluster_tol >= 0.0) {
        return Err(CliError::Validation(format!(
            "cluster tolerance must be finite and non-negative, got {cluster_tol}"
        )));
    }
    let state = load(file)?.state;
    let sym = classify_symmetric_with(&state, DEFAULT_SYMMETRY_TOL, cluster_tol)?;
    let c = &sym.constellation;
    let stars = stars_of(&sym);

    if let Some(p) = svg_path {
        let title = format!("{} ({} stars, partition {:?})", file.display(), c.n, c.partition);
        let mut out = sink(Some(p))?;
        out.write_all(svg::render(&c.stars, &title).as_bytes())?;
        out.flush()?;
    }
    let csv_to_stdout = csv_path == Some(Path::new("-"));
    if let Some(p) = csv_path {
        let mut w = csv::Writer::from_writer(sink(Some(p))?);
        for s in &stars {
            w.serialize(s)?;
        }
        w.flush()?;
    }
    if csv_to_stdout {
        return Ok(());
    }

    let vanishes = c.discriminant_vanishes(DISCRIMINANT_ZERO_TOL);
    if json {
        return emit_json(&json!({
            "n": c.n,
            "dicke_coefficients": cx_vec(sym.dicke.coeffs()),
            "polynomial": cx_vec(sym.polynomial.coeffs()),
            "degree": sym.polynomial.degree(),
            "stars": stars,
            "distinct_count": c.distinct_count,
            "partition": c.partition,
            "discriminant": Cx::from(c.discriminant),
            "discriminant_zero": vanishes,
            "onion_level": sym.onion.level,
        }));
    }
    let mut rows = vec![
        row("qubits", c.n.to_string()),
        row("distinct stars", c.distinct_count.to_string()),
        row("partition", format!("{:?}", c.partition)),
        row("onion level", format!("{} of {}", sym.onion.level, sym.onion.n)),
        row("discriminant", format!("{} ({})", sig_complex(c.discriminant), if vanishes { "zero" } else { "nonzero" })),
    ];
    for (k, s) in stars.iter().enumerate() {
        rows.push(row(format!("star{k}"), format!("theta {}  phi {}  x{}", sig(s.theta), sig(s.phi), s.multiplicity)));
    }
    emit_table(&rows);
    Ok(())
}

fn check_invariance(
    file: &Path,
    invariant: InvariantArg,
    group: GroupArg,
    trials: usize,
    seed: u64,
    cut: Vec<usize>,
    index: Option<Vec<usize>>,
) -> CliResult<()> {
    let state = load(file)?.state;
    let named = match invariant {
        InvariantArg::Norm => NamedInvariant::Norm,
        InvariantArg::Det => NamedInvariant::BipartiteDeterminant,
        InvariantArg::Hyperdet3q => NamedInvariant::CayleyHyperdeterminant,
        InvariantArg::SchmidtRank => NamedInvariant::SchmidtRank(Cut::new(cut)),
        InvariantArg::Amplitude => NamedInvariant::Amplitude(
            index.ok_or_else(|| CliError::Validation("--invariant amplitude needs --index".into()))?,
        ),
    };
    let spec = match group {
        GroupArg::Su => GroupSpec::special(state.dims()),
        GroupArg::U => GroupSpec::unitary(state.dims()),
    };
    emit_json(&invariance_suite(&state, &named, &spec, trials, seed)?)
}

fn classify_cmd(file: &Path, id: Option<String>, json: bool) -> CliResult<()> {
    let state = load(file)?.state;
    let id = id.unwrap_or_else(|| default_id(file));
    let report = classify(&id, &state)?;
    if json {
        return emit_json(&report);
    }
    print!("{}", render_report(&report));
    Ok(())
}

fn default_id(file: &Path) -> String {
    if file == Path::new("-") {
        return "stdin".into();
    }
    file.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| PathBuf::from(file).display().to_string())
}

fn render_report(r: &ClassificationReport) -> String {
    let mut out = format!("state {}  dims {:?}\n", r.state_id, r.dims);
    for c in &r.checks {
        out.push_str(&format!("definition {}: {}\n", c.definition, c.verdict));
        let rows: Vec<_> = c.evidence.iter().map(|e| row(format!("  {}", e.name), sig(e.value))).collect();
        out.push_str(&table(&rows));
    }
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}
