//! Library half of the CLI: configuration, the pipeline runner, and report
//! rendering. The binary in `main.rs` is a thin argument-parsing wrapper, so
//! integration tests can drive the whole pipeline in-process.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use homalg::hochschild::{hochschild_homology_dims, KoszulComplex};
use homalg::linalg::{axpy, rat, Rational, SparseVec};
use homalg::ncalg::SklyaninParams;
use homalg::poisson::{poisson_homology_dims, sklyanin_structure};
use homalg::series::{compare, ComparisonCell};
use homalg::table::DimTable;

/// Pipeline selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Poisson,
    Hochschild,
    KoszulCheck,
    JacobiCheck,
    CompareAll,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Poisson => "poisson",
            Mode::Hochschild => "hochschild",
            Mode::KoszulCheck => "koszul-check",
            Mode::JacobiCheck => "jacobi-check",
            Mode::CompareAll => "compare-all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// Full run configuration (mirrors the CLI flags).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub mode: Mode,
    pub max_weight: usize,
    /// Poisson-side parameters.
    pub j: [Rational; 3],
    /// Hochschild-side parameters.
    pub alpha: [Rational; 2],
    pub seed: u64,
    pub trials: usize,
    pub random: bool,
    pub output: OutputFormat,
    pub output_path: Option<String>,
    /// Lift the default hard cap of 12 on `max_weight`.
    pub unsafe_weight: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::CompareAll,
            max_weight: 8,
            j: [rat(1), rat(2), rat(5)],
            alpha: [homalg::linalg::ratio(1, 4), homalg::linalg::ratio(1, 9)],
            seed: 7,
            trials: 3,
            random: false,
            output: OutputFormat::Text,
            output_path: None,
            unsafe_weight: false,
        }
    }
}

pub const WEIGHT_HARD_CAP: usize = 12;

/// One named boolean check in the report.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// Machine-readable run report; also renders to text and CSV.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub mode: &'static str,
    pub params: serde_json::Value,
    pub tables: Vec<ComparisonCell>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub verdict: &'static str,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                serde_json::to_string_pretty(self).expect("report serializes") + "\n"
            }
            OutputFormat::Csv => {
                let mut out = String::from("side,i,d,dim,expected,match\n");
                for c in &self.tables {
                    out.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        match c.side {
                            homalg::table::Side::Poisson => "poisson",
                            homalg::table::Side::Hochschild => "hochschild",
                        },
                        c.i,
                        c.d,
                        c.dim,
                        c.expected,
                        c.matches
                    ));
                }
                out
            }
            OutputFormat::Text => {
                let mut out = String::new();
                out.push_str(&format!("mode: {}\n", self.mode));
                for w in &self.warnings {
                    out.push_str(&format!("warning: {w}\n"));
                }
                let bad: Vec<_> = self.tables.iter().filter(|c| !c.matches).collect();
                if !self.tables.is_empty() {
                    out.push_str(&format!(
                        "table cells compared: {} ({} mismatches)\n",
                        self.tables.len(),
                        bad.len()
                    ));
                }
                for c in bad.iter().take(20) {
                    out.push_str(&format!(
                        "  mismatch side={:?} i={} d={}: computed {} expected {}\n",
                        c.side, c.i, c.d, c.dim, c.expected
                    ));
                }
                for c in &self.checks {
                    out.push_str(&format!("check {}: {}\n", c.name, if c.pass { "pass" } else { "FAIL" }));
                }
                out.push_str(&format!("verdict: {}\n", self.verdict));
                out
            }
        }
    }
}

/// Deterministic parameter draws (ChaCha with the run seed): integer `J`
/// triples in `[-9, 9]` with pairwise-distinct entries, and integer `α` pairs
/// in `[-9, 9]` avoiding the degenerate locus.
pub struct ParamDraws {
    rng: ChaCha8Rng,
}

impl ParamDraws {
    pub fn new(seed: u64) -> Self {
        ParamDraws { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn j_triple(&mut self) -> [Rational; 3] {
        loop {
            let a = self.rng.gen_range(-9i64..=9);
            let b = self.rng.gen_range(-9i64..=9);
            let c = self.rng.gen_range(-9i64..=9);
            if a != b && b != c && a != c {
                return [rat(a), rat(b), rat(c)];
            }
        }
    }

    pub fn alpha_pair(&mut self) -> [Rational; 2] {
        loop {
            let a = self.rng.gen_range(-9i64..=9);
            let b = self.rng.gen_range(-9i64..=9);
            if a.abs() <= 1 || b.abs() <= 1 {
                continue;
            }
            let Ok(p) = SklyaninParams::new(rat(a), rat(b)) else { continue };
            if p.is_generic() {
                return [rat(a), rat(b)];
            }
        }
    }
}

fn params_json(config: &RunConfig) -> serde_json::Value {
    serde_json::json!({
        "J": config.j.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "alpha": config.alpha.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "max_weight": config.max_weight,
        "seed": config.seed,
        "trials": config.trials,
        "random": config.random,
    })
}

fn warn_degenerate_j(j: &[Rational; 3], warnings: &mut Vec<String>) {
    if j[0] == j[1] || j[1] == j[2] || j[0] == j[2] {
        warnings.push(format!(
            "genericity guard: J = ({}, {}, {}) has repeated entries; reference series need not apply",
            j[0], j[1], j[2]
        ));
    }
}

fn poisson_side(
    j: &[Rational; 3],
    max_weight: usize,
    cells: &mut Vec<ComparisonCell>,
    warnings: &mut Vec<String>,
) -> homalg::Result<(DimTable, bool)> {
    warn_degenerate_j(j, warnings);
    let ps = sklyanin_structure(&j[0], &j[1], &j[2]);
    let table = poisson_homology_dims(&ps, max_weight)?;
    let report = compare(&table, max_weight)?;
    cells.extend(report.cells.iter().cloned());
    Ok((table, report.pass))
}

fn hochschild_side(
    alpha: &[Rational; 2],
    max_weight: usize,
    cells: &mut Vec<ComparisonCell>,
) -> homalg::Result<(DimTable, bool)> {
    let params = SklyaninParams::new(alpha[0].clone(), alpha[1].clone())?;
    let table = hochschild_homology_dims(&params, max_weight)?;
    let report = compare(&table, max_weight)?;
    cells.extend(report.cells.iter().cloned());
    Ok((table, report.pass))
}

fn koszul_checks(alpha: &[Rational; 2], max_weight: usize, checks: &mut Vec<Check>) -> homalg::Result<bool> {
    let params = SklyaninParams::new(alpha[0].clone(), alpha[1].clone())?;
    let complex = KoszulComplex::new(params, max_weight)?;
    let rm = complex.resolution_matrices();
    let zero_product = |rows: &[Vec<homalg::ncalg::NCPoly>], cols: &[Vec<homalg::ncalg::NCPoly>]| {
        rows.iter().all(|r| {
            (0..cols[0].len()).all(|c| {
                let mut acc = SparseVec::new();
                for (k, e) in r.iter().enumerate() {
                    axpy(&mut acc, &complex.linear_product(e, &cols[k][c]), &rat(1));
                }
                acc.is_empty()
            })
        })
    };
    let mx = zero_product(&rm.m, &rm.x.iter().map(|p| vec![p.clone()]).collect::<Vec<_>>());
    let nm = zero_product(&rm.n, &rm.m);
    let tn = zero_product(&[rm.t.clone()], &rm.n);
    let exact = complex.resolution_is_exact(max_weight)?;
    checks.push(Check { name: "M*x = 0".into(), pass: mx });
    checks.push(Check { name: "N*M = 0".into(), pass: nm });
    checks.push(Check { name: "t*N = 0".into(), pass: tn });
    checks.push(Check { name: format!("resolution exact to weight {max_weight}"), pass: exact });
    Ok(mx && nm && tn && exact)
}

/// Run the configured pipeline and assemble the report.
pub fn run(config: &RunConfig) -> homalg::Result<Report> {
    if config.max_weight > WEIGHT_HARD_CAP && !config.unsafe_weight {
        return Err(homalg::Error::InvalidParams(format!(
            "max_weight {} exceeds the hard cap {WEIGHT_HARD_CAP}; pass --unsafe-weight to override",
            config.max_weight
        )));
    }
    if config.trials == 0 {
        return Err(homalg::Error::InvalidParams("trials must be >= 1".into()));
    }
    let mut cells = Vec::new();
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    let mut pass = true;

    let j_sets: Vec<[Rational; 3]> = {
        let mut sets = vec![config.j.clone()];
        if config.random && matches!(config.mode, Mode::Poisson | Mode::CompareAll) {
            let mut draws = ParamDraws::new(config.seed);
            sets.extend((0..config.trials).map(|_| draws.j_triple()));
        }
        sets
    };
    let alpha_sets: Vec<[Rational; 2]> = {
        let mut sets = vec![config.alpha.clone()];
        if config.random && matches!(config.mode, Mode::Hochschild | Mode::CompareAll) {
            let mut draws = ParamDraws::new(config.seed.wrapping_add(1));
            sets.extend((0..config.trials).map(|_| draws.alpha_pair()));
        }
        sets
    };

    match config.mode {
        Mode::JacobiCheck => {
            let ps = sklyanin_structure(&config.j[0], &config.j[1], &config.j[2]);
            let ok = ps.jacobi_holds();
            checks.push(Check { name: "jacobi identity".into(), pass: ok });
            pass &= ok;
        }
        Mode::KoszulCheck => {
            pass &= koszul_checks(&config.alpha, config.max_weight.min(6), &mut checks)?;
        }
        Mode::Poisson => {
            for j in &j_sets {
                let (_, ok) = poisson_side(j, config.max_weight, &mut cells, &mut warnings)?;
                pass &= ok;
            }
        }
        Mode::Hochschild => {
            for alpha in &alpha_sets {
                let (_, ok) = hochschild_side(alpha, config.max_weight, &mut cells)?;
                pass &= ok;
            }
        }
        Mode::CompareAll => {
            let mut first_tables: (Option<DimTable>, Option<DimTable>) = (None, None);
            for j in &j_sets {
                let (table, ok) = poisson_side(j, config.max_weight, &mut cells, &mut warnings)?;
                first_tables.0.get_or_insert(table);
                pass &= ok;
            }
            for alpha in &alpha_sets {
                let (table, ok) = hochschild_side(alpha, config.max_weight, &mut cells)?;
                first_tables.1.get_or_insert(table);
                pass &= ok;
            }
            let (Some(pt), Some(ht)) = first_tables else { unreachable!() };
            let agree = pt.agrees_with(&ht, config.max_weight);
            checks.push(Check {
                name: format!("poisson table = hochschild table to weight {}", config.max_weight),
                pass: agree,
            });
            pass &= agree;
        }
    }

    Ok(Report {
        mode: config.mode.as_str(),
        params: params_json(config),
        tables: cells,
        checks,
        warnings,
        verdict: if pass { "pass" } else { "fail" },
    })
}
