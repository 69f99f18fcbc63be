//! One function per subcommand. Each returns a report; the binary decides how
//! to print it and which exit status it maps to.

use rayon::prelude::*;

use hodgehh_core::budget::Budget;
use hodgehh_core::chainalg::{homology, ChainComplex, Coefficients, Integer, SparseMatrix};
use hodgehh_core::eulerian::{adams_matrix, hodge_components};
use hodgehh_core::fincat::{run_suite, small_categories, SuiteScope, Tally};
use hodgehh_core::hodge_geom::checks::{check_geometric_model, circle_rank_ladder, comparison_fiber_homology, nonzero_homology};
use hodgehh_core::hodge_geom::{adams_layer_map, hodge_layer, symmetric_action, LayerOperator};
use hodgehh_core::loday::{betti_by_degree, loday_complex, loday_with_coefficients, AlgModule, AugAlgebra, LodayComplex};
use hodgehh_core::simplicial::{twisted, twisted_nerve_iso, Nerve};

use crate::error::{validation, CliResult};
use crate::format::{load_algebra, parse_module, ring_tag};
use crate::report::*;
use crate::space::Space;

/// Settings shared by every job.
#[derive(Debug, Clone, Copy, Default)]
pub struct Context {
    pub budget: Budget,
    /// Worker cap for jobs that run independent instances; `None` uses every core.
    pub threads: Option<usize>,
}

impl Context {
    /// Runs `job` inside a pool capped at `threads` workers.
    fn pool<T: Send>(&self, job: impl FnOnce() -> T + Send) -> CliResult<T> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = self.threads {
            builder = builder.num_threads(t.max(1));
        }
        let pool = builder.build().map_err(|e| validation(format!("thread pool: {e}")))?;
        Ok(pool.install(job))
    }
}

/// The algebra and bounds a Loday-type job runs on.
#[derive(Debug, Clone)]
pub struct AlgebraJob {
    /// A file path or `corpus:NAME`.
    pub algebra: String,
    pub ring: Option<Coefficients>,
    pub max_degree: usize,
    /// Defaults to `(max_degree + 2)` times the largest basis weight.
    pub max_weight: Option<u32>,
}

impl AlgebraJob {
    fn load(&self) -> CliResult<(String, AugAlgebra, u32)> {
        let (name, algebra) = load_algebra(&self.algebra, self.ring)?;
        let w = self.max_weight.unwrap_or((self.max_degree as u32 + 2) * algebra.max_weight());
        Ok((name, algebra, w))
    }

    fn load_rational(&self) -> CliResult<(String, AugAlgebra, u32)> {
        if self.ring.is_some_and(|k| k != Coefficients::Rationals) {
            return Err(validation("this computation is rational; use --ring Q"));
        }
        AlgebraJob { ring: Some(Coefficients::Rationals), ..self.clone() }.load()
    }
}

/// Coefficient module choices for `loday-coeff`.
#[derive(Debug, Clone)]
pub enum ModuleChoice {
    Free,
    Augmentation,
    File(String),
}

fn to_records(rs: impl IntoIterator<Item = hodgehh_core::chainalg::HomologyRecord>) -> Vec<Record> {
    rs.into_iter().map(|r| Record::from(&r)).collect()
}

/// Nonzero homology through `bound`, split by weight when the complex carries weights.
pub fn weighted_records(c: &ChainComplex, bound: usize, k: Coefficients) -> CliResult<Vec<Record>> {
    let blocks: Vec<(Option<u32>, ChainComplex)> =
        if c.is_weighted() { c.weight_support().into_iter().map(|w| (Some(w), c.weight_block(w).0)).collect() } else { vec![(None, c.clone())] };
    let mut out = Vec::new();
    for (weight, block) in blocks {
        let block = block.padded(0, bound as i64 + 1);
        for n in 0..=bound as i64 {
            let mut r = Record::from(&homology(&block, n, k)?);
            r.weight = weight;
            if !r.is_zero() {
                out.push(r);
            }
        }
    }
    out.sort_by_key(|r| (r.degree, r.weight));
    Ok(out)
}

fn loday_report(
    name: String,
    space: &Space,
    module: Option<String>,
    loday: &LodayComplex,
    max_degree: usize,
    max_weight: u32,
) -> CliResult<LodayReport> {
    let k = loday.coefficients;
    Ok(LodayReport {
        schema: schema_tag("loday"),
        algebra: name,
        ring: ring_tag(k),
        space: space.name(),
        module,
        max_degree,
        max_weight,
        betti: betti_by_degree(&loday.complex, max_degree, k)?,
        records: weighted_records(&loday.complex, max_degree, k)?,
    })
}

pub fn loday(ctx: &Context, job: &AlgebraJob, space: &Space) -> CliResult<LodayReport> {
    let (name, algebra, w) = job.load()?;
    let x = space.build(job.max_degree + 1)?;
    let loday = loday_complex(&algebra, &x, job.max_degree, w, &ctx.budget)?;
    loday_report(name, space, None, &loday, job.max_degree, w)
}

/// Hochschild homology: the Loday construction over the circle.
pub fn hh(ctx: &Context, job: &AlgebraJob) -> CliResult<LodayReport> {
    let mut report = loday(ctx, job, &Space::parse("circle")?)?;
    report.schema = schema_tag("hh");
    Ok(report)
}

pub fn loday_coeff(ctx: &Context, job: &AlgebraJob, space: &Space, module: &ModuleChoice) -> CliResult<LodayReport> {
    let (name, algebra, w) = job.load()?;
    let (label, m) = match module {
        ModuleChoice::Free => ("free".to_string(), AlgModule::free(&algebra)),
        ModuleChoice::Augmentation => ("augmentation".to_string(), AlgModule::augmentation(&algebra)),
        ModuleChoice::File(path) => (path.clone(), parse_module(&std::fs::read_to_string(path)?, &algebra)?),
    };
    let x = space.build(job.max_degree + 1)?;
    let loday = loday_with_coefficients(&algebra, &m, &x, job.max_degree, w, &ctx.budget)?;
    let mut report = loday_report(name, space, Some(label), &loday, job.max_degree, w)?;
    report.schema = schema_tag("loday-coeff");
    Ok(report)
}

fn eigen_json(values: &[(Integer, usize)]) -> Vec<Eigenvalue> {
    values.iter().map(|(v, m)| Eigenvalue { value: v.to_string(), multiplicity: *m }).collect()
}

pub fn filtration(ctx: &Context, job: &AlgebraJob, space: &Space) -> CliResult<FiltrationReport> {
    let (name, algebra, w) = job.load()?;
    let x = space.build(job.max_degree + 1)?;
    let loday = loday_complex(&algebra, &x, job.max_degree, w, &ctx.budget)?;
    let k = loday.coefficients;
    let n = job.max_degree;
    let levels = ctx.pool(|| {
        (0..=loday.max_tag())
            .into_par_iter()
            .map(|level| {
                Ok(FiltrationLevel {
                    level,
                    sub: weighted_records(&loday.weight_filtration(level).0, n, k)?,
                    layer: weighted_records(&loday.weight_layer(level), n, k)?,
                    quotient: weighted_records(&loday.filtration_quotient(level), n, k)?,
                })
            })
            .collect::<CliResult<Vec<_>>>()
    })??;
    let rational = k == Coefficients::Rationals;
    let convergence = if rational {
        (0..=n).map(|i| Ok(Convergence { degree: i, level: loday.convergence_level(i)? })).collect::<CliResult<_>>()?
    } else {
        Vec::new()
    };
    let eigenvalues = if rational && space.is_circle() {
        adams_matrix(&algebra, n, w, 2, &ctx.budget)?
            .into_iter()
            .map(|b| EigenRecord {
                degree: b.degree,
                weight: b.weight,
                r: b.r,
                eigenvalues: eigen_json(&b.eigenvalues),
                diagonalizable: b.diagonalizable,
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(FiltrationReport {
        schema: schema_tag("filtration"),
        algebra: name,
        ring: ring_tag(k),
        space: space.name(),
        max_degree: n,
        max_weight: w,
        total: weighted_records(&loday.complex, n, k)?,
        levels,
        convergence,
        eigenvalues,
    })
}

fn blocks_json(op: &LayerOperator) -> Vec<MatrixBlock> {
    op.blocks.iter().map(|(d, m)| MatrixBlock { degree: *d, matrix: dense(m) }).collect()
}

fn transposition(m: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.swap(i, i + 1);
    p
}

/// The adjacent transpositions satisfy the Coxeter presentation of `Σ_m`.
fn coxeter_relations(ts: &[LayerOperator]) -> bool {
    let identity = |op: &LayerOperator| op.is_scalar(1);
    (0..ts.len()).all(|i| {
        identity(&ts[i].compose(&ts[i]))
            && (i + 1 >= ts.len() || {
                let braid = ts[i].compose(&ts[i + 1]);
                identity(&braid.compose(&braid).compose(&braid))
            })
            && (i + 2..ts.len()).all(|j| ts[i].compose(&ts[j]).blocks == ts[j].compose(&ts[i]).blocks)
    })
}

fn power(r: i64, n: usize) -> CliResult<i64> {
    u32::try_from(n).ok().and_then(|n| r.checked_pow(n)).ok_or_else(|| validation(format!("{r}^{n} overflows")))
}

pub fn layers(ctx: &Context, space: &Space, arity: usize, level: usize, adams: Option<i64>) -> CliResult<LayerReport> {
    let x = space.build(arity * space.dimension() + 1)?;
    let layer = hodge_layer(&x, arity, level, &ctx.budget)?;
    let applicable = arity == level && space.is_circle();
    let passed = !applicable || layer.transpositions.iter().all(|t| t.is_scalar(-1));
    let adams = match adams {
        None => None,
        Some(r) => {
            let op = adams_layer_map(&layer, r)?;
            let expected = power(r, level)?;
            Some(AdamsOnLayer { r, matrix: blocks_json(&op), expected_scalar: Some(expected.to_string()), passed: op.is_scalar(expected) })
        }
    };
    Ok(LayerReport {
        schema: schema_tag("layers"),
        space: space.name(),
        arity,
        level,
        homology: to_records(layer.homology()).into_iter().filter(|r| !r.is_zero()).collect(),
        sign_check: SignCheck {
            applicable,
            passed,
            representation: coxeter_relations(&layer.transpositions),
            transpositions: layer
                .transpositions
                .iter()
                .enumerate()
                .map(|(i, t)| PermutationAction { permutation: transposition(arity, i), blocks: blocks_json(t) })
                .collect(),
        },
        adams,
    })
}

pub fn adams(ctx: &Context, job: &AlgebraJob, r: u64, s: Option<u64>) -> CliResult<AdamsReport> {
    let (name, algebra, w) = job.load_rational()?;
    let n = job.max_degree;
    let (first, second, product) = ctx.pool(|| {
        let first = adams_matrix(&algebra, n, w, r, &ctx.budget);
        let more = s.map(|s| (adams_matrix(&algebra, n, w, s, &ctx.budget), adams_matrix(&algebra, n, w, r * s, &ctx.budget)));
        (first, more.as_ref().map(|m| m.0.clone()), more.map(|m| m.1))
    })?;
    let first = first?;
    let second = second.transpose()?;
    let product = product.transpose()?;
    let blocks = first
        .iter()
        .map(|b| {
            let composes = match (&second, &product) {
                (Some(second), Some(product)) => {
                    let find = |bs: &[hodgehh_core::eulerian::AdamsBlock]| {
                        bs.iter().find(|c| c.degree == b.degree && c.weight == b.weight).map(|c| c.matrix.clone())
                    };
                    Some(match (find(second), find(product)) {
                        (Some(ms), Some(mrs)) => b.matrix.mul(&ms) == mrs && ms.mul(&b.matrix) == mrs,
                        _ => false,
                    })
                }
                _ => None,
            };
            AdamsEntry {
                degree: b.degree,
                weight: b.weight,
                matrix: dense(&b.matrix),
                eigenvalues: eigen_json(&b.eigenvalues),
                diagonalizable: b.diagonalizable,
                composes,
            }
        })
        .collect();
    Ok(AdamsReport { schema: schema_tag("adams"), algebra: name, max_degree: n, max_weight: w, r, s, blocks })
}

pub fn hodge_q(ctx: &Context, job: &AlgebraJob) -> CliResult<HodgeReport> {
    let (name, algebra, w) = job.load_rational()?;
    let n = job.max_degree;
    let (records, blocks) =
        ctx.pool(|| rayon::join(|| hodge_components(&algebra, n, w, &ctx.budget), || adams_matrix(&algebra, n, w, 2, &ctx.budget)))?;
    let (records, blocks) = (records?, blocks?);
    let entries = blocks
        .iter()
        .map(|b| {
            let components: Vec<Component> = records
                .iter()
                .filter(|c| c.degree == b.degree && c.weight == b.weight && c.dim > 0)
                .map(|c| Component { i: c.component, dim: c.dim })
                .collect();
            let consistent = b.diagonalizable
                && components.len() == b.eigenvalues.len()
                && components.iter().all(|c| b.eigenvalues.iter().any(|(v, m)| power(2, c.i).is_ok_and(|p| *v == Integer::from(p)) && *m == c.dim));
            HodgeEntry {
                degree: b.degree,
                weight: b.weight,
                components,
                adams: AdamsEigenvalues { r: b.r, eigenvalues: eigen_json(&b.eigenvalues) },
                consistent,
            }
        })
        .collect();
    Ok(HodgeReport { schema: schema_tag("hodge-q"), algebra: name, max_degree: n, max_weight: w, entries })
}

/// Twisted subdivision of `space` through `top`, and optionally the nerve comparison
/// over every category with at most `corpus.0` objects and `corpus.1` arrows.
pub fn tw(ctx: &Context, space: &Space, top: usize, corpus: Option<(usize, usize)>) -> CliResult<TwReport> {
    let x = space.build(2 * top + 1)?;
    let t = twisted(&x, top)?;
    let generators = (0..=top).map(|q| t.set.count(q)).collect();
    let simplices = (0..=top).map(|q| t.set.simplex_count(q)).collect();
    let identity_violations = t.set.identity_violations(top);
    let (categories, nerve_mismatches) = match corpus {
        None => (0, 0),
        Some((objects, arrows)) => {
            let cats = small_categories(objects, arrows);
            let mismatches = ctx.pool(|| {
                cats.par_iter()
                    .map(|c| {
                        let ok = Nerve::new(c, 2 * top + 1).and_then(|n| twisted(&n.set, top).and_then(|tw| twisted_nerve_iso(&n, &tw))).is_ok();
                        usize::from(!ok)
                    })
                    .sum::<usize>()
            })?;
            (cats.len(), mismatches)
        }
    };
    Ok(TwReport { schema: schema_tag("tw"), source: space.name(), top, generators, simplices, identity_violations, nerve_mismatches, categories })
}

fn tally(t: Tally) -> TallyJson {
    TallyJson { checked: t.checked, mismatches: t.mismatches }
}

pub fn check_identities(ctx: &Context, corpus: &str) -> CliResult<IdentitySuiteReport> {
    let (scope, objects, arrows) = match corpus {
        "small" => (SuiteScope::small(), 3, 3),
        "standard" => (SuiteScope::standard(), 3, 6),
        other => return Err(validation(format!("unknown corpus {other:?}; expected small or standard"))),
    };
    let cats = small_categories(objects, arrows);
    let report = ctx.pool(|| run_suite(&cats, &scope))?;
    Ok(IdentitySuiteReport {
        schema: schema_tag("check-section2"),
        corpus: corpus.to_string(),
        categories: cats.len(),
        end_nat: tally(report.end_nat),
        kan: tally(report.kan),
        unit_coend: tally(report.unit_coend),
    })
}

pub fn check_model(ctx: &Context, space: &Space, max_arity: usize) -> CliResult<ModelCheckReport> {
    if max_arity > ctx.budget.max_arity {
        return Err(crate::error::CliError::Budget(format!("arity {max_arity} exceeds the cap {}", ctx.budget.max_arity)));
    }
    let pairs: Vec<(usize, usize)> = (1..=max_arity).flat_map(|m| (0..=m).map(move |n| (m, n))).collect();
    let instances = ctx.pool(|| {
        pairs
            .par_iter()
            .map(|&(m, n)| {
                let x = space.build(m * space.dimension() + 1)?;
                let check = check_geometric_model(&x, m, n, &ctx.budget)?;
                let fiber = to_records(comparison_fiber_homology(&x, m, n, &ctx.budget)?);
                let passed = check.holds() && fiber.is_empty();
                Ok(ModelInstance {
                    arity: m,
                    bound: n,
                    holim: to_records(check.holim),
                    bounded: to_records(check.bounded),
                    comparison_is_iso: check.comparison_is_iso,
                    split_injection: check.split_injection,
                    fiber,
                    passed,
                })
            })
            .collect::<CliResult<Vec<_>>>()
    })??;
    Ok(ModelCheckReport { schema: schema_tag("check-prop44"), space: space.name(), max_arity, instances })
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(m - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

fn level_check(ctx: &Context, level: usize) -> CliResult<LevelCheck> {
    let circle = Space::parse("circle")?;
    let x = circle.build(level + 1)?;
    let layer = hodge_layer(&x, level, level, &ctx.budget)?;
    let homology = to_records(nonzero_homology(&layer.fiber.complex, level as i64)?);
    let concentrated = homology.len() == 1 && homology[0].degree == level as i64 && homology[0].betti == 1 && homology[0].torsion.is_empty();
    let acts_by = |moved: usize, c: i64| {
        all_permutations(level).iter().filter(|p| p.iter().enumerate().filter(|(i, v)| *i != **v).count() == moved).all(|p| {
            symmetric_action(&layer, p)
                .is_ok_and(|op| op.block(level as i64).is_some_and(|m| *m == SparseMatrix::identity(m.nrows()).scale(&Integer::from(c))))
        })
    };
    let transpositions_negate = acts_by(2, -1);
    // every permutation moving exactly three points is a 3-cycle
    let three_cycles_fix = acts_by(3, 1);
    let ladder: Vec<LadderJson> = circle_rank_ladder(level, &ctx.budget)?
        .into_iter()
        .map(|s| LadderJson { degree: s.degree, binomial: s.binomial, upper_rank: s.upper_rank, lower_rank: s.lower_rank, unimodular: s.unimodular })
        .collect();
    let adams = [-1i64, 2, 3]
        .into_iter()
        .map(|r| {
            let expected = power(r, level)?;
            let passed = adams_layer_map(&layer, r)?.is_scalar(expected);
            Ok(AdamsScalar { r, expected: expected.to_string(), passed })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let passed = concentrated
        && transpositions_negate
        && three_cycles_fix
        && ladder.iter().all(|s| s.upper_rank == s.binomial && s.lower_rank == s.binomial && s.unimodular)
        && adams.iter().all(|a| a.passed);
    Ok(LevelCheck { level, homology, concentrated, transpositions_negate, three_cycles_fix, ladder, adams, passed })
}

pub fn check_layers(ctx: &Context, max_level: usize) -> CliResult<LayerCheckReport> {
    if max_level == 0 {
        return Err(validation("max level must be at least 1"));
    }
    let levels = ctx.pool(|| (1..=max_level).into_par_iter().map(|n| level_check(ctx, n)).collect::<CliResult<Vec<_>>>())??;
    Ok(LayerCheckReport { schema: schema_tag("check-prop61"), max_level, levels })
}
