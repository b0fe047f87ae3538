//! Turns a parsed scenario into concrete sequences, runs one command, and
//! assembles the JSON report plus CSV dumps.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use summab_core::{
    abel_splits_all, almost_increasing_witness, cesaro_index, check_factor_conditions,
    check_lemma_conclusions, check_matrix_conditions, check_moment_condition,
    check_weight_conditions, conditions::condition_id, defaults, families, matrix_index,
    term_index_partials, weighted_index, x_non_decreasing, AbelSplit, CheckOutcome, CheckParams,
    ConditionEntry, DerivedMatrices, FactorSystem,
    HypothesisReport, IndexSeries, MomentVariant, NormalMatrix, RealSequence, Rollup,
    ViolationAt, WeightSequence,
};

use crate::error::CliError;
use crate::report::{
    conditions_map, rollup_exit_code, ConditionJson, DecompositionJson, IndexJson, Provenance,
    Report, ScenarioEcho, TermJson,
};
use crate::scenario::{
    BetaSpec, IndexMethodSpec, LambdaSpec, MatrixSpec, Scenario, TermsSpec, Tolerances,
    WeightsSpec, XSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Conditions,
    MatrixConditions,
    Index,
    Decompose,
    Theorem,
    Reduce,
}

impl Command {
    pub fn label(self) -> &'static str {
        match self {
            Command::Conditions => "conditions",
            Command::MatrixConditions => "matrix-conditions",
            Command::Index => "index",
            Command::Decompose => "decompose",
            Command::Theorem => "theorem",
            Command::Reduce => "reduce",
        }
    }
}

/// The scenario with every sequence materialised on `0..=horizon`.
#[derive(Debug)]
pub struct Resolved {
    pub scenario: Scenario,
    pub terms: RealSequence<f64>,
    pub weights: WeightSequence<f64>,
    pub x: RealSequence<f64>,
    pub lambda: RealSequence<f64>,
    /// `None` means derive `beta_n = |lambda_n - lambda_{n+1}|`.
    pub beta: Option<RealSequence<f64>>,
    pub matrix: NormalMatrix<f64>,
}

fn check_params(tol: &Tolerances) -> CheckParams<f64> {
    CheckParams {
        slope_tol: tol.slope_tol,
        abs_tol: tol.abs_tol,
        beta_tol: tol.beta_tol,
        block_rho: tol.block_rho,
        ratio_cap: tol.ratio_cap,
        start_index: defaults::START_INDEX,
    }
}

/// Reads a `n,value` CSV: indices must be contiguous from 0, at least
/// `min_len` rows; blank lines, `#` comments, and an optional header allowed.
fn load_sequence_csv(path: &Path, min_len: usize) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::scenario(path, format!("cannot read sequence file: {e}")))?;
    let mut values: Vec<f64> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if values.is_empty() && t.eq_ignore_ascii_case("n,value") {
            continue;
        }
        let Some((ns, vs)) = t.split_once(',') else {
            return Err(CliError::at(path, lineno, "expected two columns `n,value`"));
        };
        let n: usize = ns.trim().parse().map_err(|_| {
            CliError::at(path, lineno, format!("invalid index `{}`", ns.trim()))
        })?;
        if n != values.len() {
            return Err(CliError::at(
                path,
                lineno,
                format!("expected index {}, got {n} (indices must be contiguous from 0)", values.len()),
            ));
        }
        let v: f64 = vs.trim().parse().map_err(|_| {
            CliError::at(path, lineno, format!("invalid value `{}`", vs.trim()))
        })?;
        if !v.is_finite() {
            return Err(CliError::at(path, lineno, format!("non-finite value {v}")));
        }
        values.push(v);
    }
    if values.len() < min_len {
        return Err(CliError::scenario(
            path,
            format!(
                "sequence has {} entries but the horizon needs at least {min_len}",
                values.len()
            ),
        ));
    }
    values.truncate(min_len);
    Ok(values)
}

fn tabulated(path: &Path, horizon: usize) -> Result<RealSequence<f64>, CliError> {
    let values = load_sequence_csv(path, horizon + 1)?;
    Ok(RealSequence::tabulated(values)?)
}

pub fn resolve(sc: &Scenario) -> Result<Resolved, CliError> {
    let n = sc.horizon;

    let terms = match &sc.terms {
        TermsSpec::Alternating => families::terms_alternating(n)?,
        TermsSpec::AlternatingPower(delta) => families::terms_alternating_power(n, *delta)?,
        TermsSpec::Tabulated(path) => tabulated(path, n)?,
    };

    let weights = match &sc.weights {
        WeightsSpec::Unit => families::weights_unit(n)?,
        WeightsSpec::Linear => families::weights_linear(n)?,
        WeightsSpec::Geometric(q) => families::weights_geometric(n, *q)?,
        WeightsSpec::LogSlow => families::weights_log_slow(n)?,
        WeightsSpec::Tabulated(path) => {
            WeightSequence::from_values(load_sequence_csv(path, n + 1)?)?
        }
    };

    let x = match &sc.x {
        XSpec::HarmonicPlusOne => families::x_harmonic_plus_one(n)?,
        XSpec::Power(epsilon) => families::x_power(n, *epsilon)?,
        XSpec::Tabulated(path) => tabulated(path, n)?,
    };

    let lambda = match &sc.lambda {
        LambdaSpec::InverseXSquared => families::lambda_inverse_x_squared(&x)?,
        LambdaSpec::InverseX => families::lambda_inverse_x(&x)?,
        LambdaSpec::Constant(c) => families::lambda_constant(n, *c)?,
        LambdaSpec::Tabulated(path) => tabulated(path, n)?,
    };

    let beta = match &sc.beta {
        BetaSpec::Auto => None,
        BetaSpec::Tabulated(path) => Some(tabulated(path, n)?),
    };

    let matrix = match &sc.matrix {
        MatrixSpec::WeightedMean => NormalMatrix::weighted_mean(&weights)?,
        MatrixSpec::Cesaro(alpha) => NormalMatrix::cesaro(*alpha, n)?,
        MatrixSpec::Identity => NormalMatrix::identity(n),
        MatrixSpec::Csv(path) => {
            let loaded = NormalMatrix::from_csv(path)?;
            if loaded.horizon() < n {
                return Err(CliError::scenario(
                    path,
                    format!(
                        "matrix covers rows 0..={} but the horizon needs 0..={n}",
                        loaded.horizon()
                    ),
                ));
            }
            if loaded.horizon() == n {
                loaded
            } else {
                let rows: Vec<Vec<f64>> = (0..=n)
                    .map(|i| (0..=i).map(|j| loaded.entry(i, j)).collect())
                    .collect();
                NormalMatrix::from_rows(rows)?
            }
        }
    };

    Ok(Resolved {
        scenario: sc.clone(),
        terms,
        weights,
        x,
        lambda,
        beta,
        matrix,
    })
}

fn build_factor_system(r: &Resolved) -> Result<FactorSystem<f64>, CliError> {
    let fs = match &r.beta {
        None => FactorSystem::with_auto_beta(
            r.x.clone(),
            r.lambda.clone(),
            r.weights.clone(),
            r.scenario.k,
        )?,
        Some(beta) => FactorSystem::new(
            r.x.clone(),
            r.lambda.clone(),
            beta.clone(),
            r.weights.clone(),
            r.scenario.k,
        )?,
    };
    Ok(fs)
}

fn build_index_series(
    r: &Resolved,
    terms: &RealSequence<f64>,
) -> Result<IndexSeries<f64>, CliError> {
    let n = r.scenario.horizon;
    let k = r.scenario.k;
    let series = match &r.scenario.index_method {
        IndexMethodSpec::Matrix => matrix_index(&r.matrix, &r.weights, terms, k, n)?,
        IndexMethodSpec::Weighted => weighted_index(terms, &r.weights, k, n)?,
        IndexMethodSpec::Cesaro(alpha) => cesaro_index(terms, *alpha, k, n)?,
    };
    Ok(series)
}

struct Dumper<'d> {
    dir: Option<&'d Path>,
}

impl<'d> Dumper<'d> {
    fn new(dir: Option<&'d Path>) -> Result<Self, CliError> {
        if let Some(dir) = dir {
            std::fs::create_dir_all(dir).map_err(|e| CliError::output(dir, e))?;
        }
        Ok(Dumper { dir })
    }

    fn write(
        &self,
        name: &str,
        header: &str,
        rows: impl Iterator<Item = String>,
    ) -> Result<(), CliError> {
        let Some(dir) = self.dir else {
            return Ok(());
        };
        let mut text = String::new();
        text.push_str(header);
        text.push('\n');
        for row in rows {
            text.push_str(&row);
            text.push('\n');
        }
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| CliError::output(&path, e))
    }

    fn series(&self, name: &str, partials: &RealSequence<f64>) -> Result<(), CliError> {
        self.write(
            name,
            "n,value",
            (0..=partials.horizon()).map(|n| format!("{n},{}", partials.at(n))),
        )
    }
}

/// `conditions`: every factor, weight, moment, X-shape, and conclusion check.
fn run_conditions(r: &Resolved, params: &CheckParams<f64>) -> Result<(HypothesisReport<f64>, Rollup), CliError> {
    let fs = build_factor_system(r)?;
    let mut report = check_factor_conditions(&fs, params)?;
    report.absorb(check_weight_conditions(fs.weights(), params)?);

    let s = r.terms.partial_sums()?;
    for variant in [MomentVariant::Plain, MomentVariant::Scaled] {
        let w = check_moment_condition(&s, &r.x, r.scenario.k, variant, params)?;
        report.insert(variant.id(), ConditionEntry::Witness(w));
    }

    report.insert(
        condition_id::X_NON_DECREASING,
        ConditionEntry::Check(x_non_decreasing(&r.x, params)),
    );
    let ai = almost_increasing_witness(&r.x, params.ratio_cap, params.slope_tol)?;
    report.insert(
        condition_id::X_ALMOST_INCREASING,
        ConditionEntry::Witness(ai.witness().clone()),
    );

    report.absorb(check_lemma_conclusions(&fs, params)?);
    let overall = report.overall();
    Ok((report, overall))
}

fn run_matrix_conditions(
    r: &Resolved,
    params: &CheckParams<f64>,
) -> Result<(HypothesisReport<f64>, Rollup), CliError> {
    let d = DerivedMatrices::derive(r.matrix.clone());
    let checked = check_matrix_conditions(&d, &r.weights, params)?;
    let report = checked.as_report();
    let overall = checked.rollup();
    Ok((report, overall))
}

struct SplitsOutcome {
    decomposition: DecompositionJson,
    term_series: Vec<IndexSeries<f64>>,
    splits: Vec<AbelSplit<f64>>,
    rollup: Rollup,
}

/// Runs the four-term split, residual gate, and the split-term index trends.
fn run_splits(r: &Resolved, params: &CheckParams<f64>) -> Result<SplitsOutcome, CliError> {
    let n = r.scenario.horizon;
    let d = DerivedMatrices::derive(r.matrix.clone());
    let splits = abel_splits_all(&d, &r.terms, &r.weights, &r.lambda, n)?;

    let residual_tol = r.scenario.tol.residual_tol;
    let mut residual_max = 0.0f64;
    let mut residual_argmax = 0usize;
    let mut residual_ok = true;
    for split in &splits {
        if split.residual > residual_max {
            residual_max = split.residual;
            residual_argmax = split.n;
        }
        if split.residual > residual_tol * (1.0 + split.direct.abs()) {
            residual_ok = false;
        }
    }

    let term_series = term_index_partials(&splits, &r.weights, r.scenario.k)?.to_vec();
    let mut terms_json = Vec::new();
    let mut rollup = if residual_ok { Rollup::Pass } else { Rollup::Fail };
    for series in &term_series {
        let diag = series.diagnostic(params.block_rho)?;
        rollup = rollup.combine(diag.rollup());
        terms_json.push(TermJson {
            t_final: series.final_value(),
            verdict: diag.verdict().as_str().to_string(),
            blocks: diag.blocks().to_vec(),
        });
    }

    Ok(SplitsOutcome {
        decomposition: DecompositionJson {
            residual_max,
            residual_argmax,
            residual_ok,
            terms: terms_json,
        },
        term_series,
        splits,
        rollup,
    })
}

fn dump_splits(dumper: &Dumper, outcome: &SplitsOutcome) -> Result<(), CliError> {
    dumper.write(
        "abel_split.csv",
        "n,v1,v2,v3,v4,direct,residual",
        outcome.splits.iter().map(|s| {
            let mut row = format!("{}", s.n);
            for t in s.terms {
                let _ = write!(row, ",{t}");
            }
            let _ = write!(row, ",{},{}", s.direct, s.residual);
            row
        }),
    )?;
    let horizon = outcome.term_series[0].horizon();
    dumper.write(
        "term_indexes.csv",
        "n,t1,t2,t3,t4",
        (0..=horizon).map(|n| {
            let mut row = format!("{n}");
            for series in &outcome.term_series {
                let _ = write!(row, ",{}", series.partials().at(n));
            }
            row
        }),
    )?;
    Ok(())
}

/// `theorem`: preset hypotheses, lemma conclusions, factored-series index,
/// and the four-term decomposition, all gating the overall verdict.
fn run_theorem(
    r: &Resolved,
    params: &CheckParams<f64>,
    dumper: &Dumper,
    notes: &mut Vec<String>,
) -> Result<(HypothesisReport<f64>, Option<IndexJson>, Option<DecompositionJson>, Rollup), CliError>
{
    let preset = r.scenario.preset;
    let fs = build_factor_system(r)?;
    let mut report = check_factor_conditions(&fs, params)?;
    report.absorb(check_weight_conditions(fs.weights(), params)?);

    let s = r.terms.partial_sums()?;
    let moment = check_moment_condition(&s, &r.x, r.scenario.k, preset.moment_variant(), params)?;
    report.insert(preset.moment_variant().id(), ConditionEntry::Witness(moment));

    report.insert(
        condition_id::X_NON_DECREASING,
        ConditionEntry::Check(x_non_decreasing(&r.x, params)),
    );
    let ai = almost_increasing_witness(&r.x, params.ratio_cap, params.slope_tol)?;
    report.insert(
        condition_id::X_ALMOST_INCREASING,
        ConditionEntry::Witness(ai.witness().clone()),
    );

    if preset.needs_matrix_conditions() {
        let d = DerivedMatrices::derive(r.matrix.clone());
        report.absorb(check_matrix_conditions(&d, &r.weights, params)?.as_report());
    }

    report.absorb(check_lemma_conclusions(&fs, params)?);

    let hypothesis_rollup = report.overall_of(preset.required_ids());
    let conclusion_rollup = report.overall_of(&[
        condition_id::NXB_BOUNDED,
        condition_id::BX_SUMMABLE,
        condition_id::WEIGHT_SMOOTH,
        condition_id::LAMBDA_BOUNDED,
        condition_id::LAMBDA_DIFF_DECAY,
    ]);

    let factored = summab_core::factored_terms(&r.terms, &r.weights, &r.lambda)?;
    let full_index = matrix_index(
        &r.matrix,
        &r.weights,
        &factored,
        r.scenario.k,
        r.scenario.horizon,
    )?;
    let diag = full_index.diagnostic(params.block_rho)?;
    dumper.series("index.csv", full_index.partials())?;
    let index_json = IndexJson::from_series(&full_index, &diag);

    let splits = run_splits(r, params)?;
    dump_splits(dumper, &splits)?;

    notes.push(format!(
        "theorem gate: hypotheses {}, conclusions {}, factored index {}, decomposition {}",
        hypothesis_rollup.as_str(),
        conclusion_rollup.as_str(),
        diag.verdict().as_str(),
        splits.rollup.as_str(),
    ));

    let overall = Rollup::combine_all([
        hypothesis_rollup,
        conclusion_rollup,
        diag.rollup(),
        splits.rollup,
    ]);
    Ok((report, Some(index_json), Some(splits.decomposition), overall))
}

/// Pointwise comparison of two index partials under the guarded tolerance
/// `|a - b| <= abs_tol * (1 + |b|)`.
fn compare_partials(
    a: &IndexSeries<f64>,
    b: &IndexSeries<f64>,
    abs_tol: f64,
) -> CheckOutcome {
    let horizon = a.horizon().min(b.horizon());
    for n in 0..=horizon {
        let av = a.partials().at(n);
        let bv = b.partials().at(n);
        if (av - bv).abs() > abs_tol * (1.0 + bv.abs()) {
            return CheckOutcome::failed_at(ViolationAt::Index(n));
        }
    }
    CheckOutcome::passed()
}

/// `reduce`: the matrix route on the weighted-mean matrix must agree with
/// the dedicated weighted index; with unit weights and k = 1 it must also
/// collapse to the first-order Cesaro index and, through the identity
/// matrix, to plain absolute convergence.
fn run_reduce(
    r: &Resolved,
    params: &CheckParams<f64>,
    dumper: &Dumper,
    notes: &mut Vec<String>,
) -> Result<(BTreeMap<String, ConditionJson>, Option<IndexJson>, Rollup), CliError> {
    let n = r.scenario.horizon;
    let k = r.scenario.k;
    let abs_tol = r.scenario.tol.abs_tol;

    let wm = NormalMatrix::weighted_mean(&r.weights)?;
    let via_matrix = matrix_index(&wm, &r.weights, &r.terms, k, n)?;
    let via_weighted = weighted_index(&r.terms, &r.weights, k, n)?;

    let mut conditions = BTreeMap::new();
    let mut verdicts = Vec::new();

    let weighted_check = compare_partials(&via_matrix, &via_weighted, abs_tol);
    verdicts.push(weighted_check.rollup());
    conditions.insert(
        "reduce_weighted".to_string(),
        ConditionJson::from_check(&weighted_check),
    );

    let unit_k1 = r.scenario.weights == WeightsSpec::Unit && k == 1.0;
    if unit_k1 {
        let via_cesaro = cesaro_index(&r.terms, 1.0, k, n)?;
        let cesaro_check = compare_partials(&via_weighted, &via_cesaro, abs_tol);
        verdicts.push(cesaro_check.rollup());
        conditions.insert(
            "reduce_cesaro1".to_string(),
            ConditionJson::from_check(&cesaro_check),
        );

        // Identity matrix: the transform step is the term itself, so the
        // index partials must match the running sum of |a_v|.
        let identity = NormalMatrix::identity(n);
        let via_identity = matrix_index(&identity, &r.weights, &r.terms, k, n)?;
        let mut acc = 0.0f64;
        let mut identity_check = CheckOutcome::passed();
        for m in 0..=n {
            if m >= 1 {
                acc += r.terms.at(m).abs();
            }
            let got = via_identity.partials().at(m);
            if (got - acc).abs() > abs_tol * (1.0 + acc.abs()) {
                identity_check = CheckOutcome::failed_at(ViolationAt::Index(m));
                break;
            }
        }
        verdicts.push(identity_check.rollup());
        conditions.insert(
            "reduce_identity".to_string(),
            ConditionJson::from_check(&identity_check),
        );
    } else {
        notes.push(
            "cesaro and identity reductions need unit weights and k = 1; skipped".to_string(),
        );
    }

    let diag = via_matrix.diagnostic(params.block_rho)?;
    dumper.series("index.csv", via_matrix.partials())?;
    let index_json = IndexJson::from_series(&via_matrix, &diag);

    Ok((
        conditions,
        Some(index_json),
        Rollup::combine_all(verdicts),
    ))
}

/// Runs `command` against the scenario and returns the report plus its
/// process exit code.
pub fn run(
    sc: &Scenario,
    command: Command,
    dump_dir: Option<&Path>,
    mut notes: Vec<String>,
) -> Result<(Report, i32), CliError> {
    let r = resolve(sc)?;
    let params = check_params(&sc.tol);
    let dumper = Dumper::new(dump_dir)?;

    let mut conditions: Option<BTreeMap<String, ConditionJson>> = None;
    let mut index: Option<IndexJson> = None;
    let mut decomposition: Option<DecompositionJson> = None;

    let overall = match command {
        Command::Conditions => {
            let (report, overall) = run_conditions(&r, &params)?;
            conditions = Some(conditions_map(&report));
            overall
        }
        Command::MatrixConditions => {
            let (report, overall) = run_matrix_conditions(&r, &params)?;
            conditions = Some(conditions_map(&report));
            overall
        }
        Command::Index => {
            let series = build_index_series(&r, &r.terms)?;
            let diag = series.diagnostic(params.block_rho)?;
            dumper.series("index.csv", series.partials())?;
            index = Some(IndexJson::from_series(&series, &diag));
            diag.rollup()
        }
        Command::Decompose => {
            let outcome = run_splits(&r, &params)?;
            dump_splits(&dumper, &outcome)?;
            let overall = outcome.rollup;
            decomposition = Some(outcome.decomposition);
            overall
        }
        Command::Theorem => {
            let (report, ix, dec, overall) = run_theorem(&r, &params, &dumper, &mut notes)?;
            conditions = Some(conditions_map(&report));
            index = ix;
            decomposition = dec;
            overall
        }
        Command::Reduce => {
            let (cond, ix, overall) = run_reduce(&r, &params, &dumper, &mut notes)?;
            conditions = Some(cond);
            index = ix;
            overall
        }
    };

    let report = Report {
        scenario: ScenarioEcho::from_scenario(sc),
        command: command.label().to_string(),
        conditions,
        index,
        decomposition,
        provenance: Provenance {
            overall: overall.as_str().to_string(),
            beta: match &sc.beta {
                BetaSpec::Auto => "auto: beta_n = |lambda_n - lambda_{n+1}|".to_string(),
                other => other.label(),
            },
            defaults: sc.defaulted.clone(),
            notes,
        },
    };
    Ok((report, rollup_exit_code(overall)))
}
