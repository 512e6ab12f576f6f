use super::format::{Input, SkeletonSource};
use super::report::RunReport;
use crate::bordism::{bent_in, bent_out, circle_slice, closed, copants, disk_in, disk_out, pants, Bordism, Composition, Slice, Symmetry};
use crate::complex::{cohomology, long_exact_sequence_check, SimplicialPair};
use crate::error::{Error, Result};
use crate::exactalg::{FinAbGroup, GroupElement};
use crate::gauging::{delta_identity_check, double_gauge_check, gauge, pairing_vanishes_on_parallel, GaugedTheory, Section};
use crate::manifold::{library, skeleton_pair, SkeletonKind, SliceComplex, TriangulatedManifold};
use crate::report::Report;
use crate::tqft::{fixture_set, trivial_theory, verify_functor, Amplitude, Theory};
use num_rational::Ratio;
use std::str::FromStr;
use std::sync::Arc;

/// Flags shared by all commands.
#[derive(Clone, Debug)]
pub struct Options {
    pub coeff: FinAbGroup,
    pub q: usize,
    /// Weight of the outgoing end in the gauging normalization.
    pub s: Ratio<i64>,
    /// Random sections of `g` instead of lex-min ones.
    pub seed: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options { coeff: FinAbGroup::cyclic(2), q: 0, s: Ratio::new(1, 2), seed: None }
    }
}

impl Options {
    fn symmetry(&self, d: usize) -> Result<Symmetry> {
        Symmetry::new(d, self.q, self.coeff.clone())
    }

    fn gauged(&self, symmetry: &Symmetry) -> GaugedTheory {
        let z = gauge(Arc::new(trivial_theory(symmetry.clone()))).with_normalization(self.s);
        match self.seed {
            Some(seed) => z.with_section(Section::Random(seed)),
            None => z,
        }
    }
}

/// Parses `0`, `1`, `0.5` or a fraction such as `1/2`.
pub fn parse_ratio(s: &str) -> Result<Ratio<i64>> {
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    if let Some((whole, frac)) = s.split_once('.') {
        let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let w: i64 = if whole.is_empty() { 0 } else { whole.parse().map_err(|_| bad())? };
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let sign = if whole.starts_with('-') { -1 } else { 1 };
        return Ok(Ratio::from_integer(w) + Ratio::new(sign * f, den));
    }
    Ratio::from_str(s).map_err(|_| bad())
}

/// Which pair `(X, A)` a cohomology group is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSpec {
    Absolute,
    /// `(M, ∂M)`.
    Boundary,
    /// `(Σ, sk_dual)` for the standard pair on the subdivision.
    Skeleton(SkeletonSource),
}

impl FromStr for PairSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "absolute" => Ok(PairSpec::Absolute),
            "boundary" => Ok(PairSpec::Boundary),
            "triangulation" => Ok(PairSpec::Skeleton(SkeletonSource::Triangulation)),
            "dual" => Ok(PairSpec::Skeleton(SkeletonSource::Dual)),
            _ => Err(Error::Parse(format!("unknown pair `{s}`; expected absolute, boundary, triangulation or dual"))),
        }
    }
}

/// `H^deg` of the chosen pair. Without an explicit pair, a file's skeleton
/// spec (and its `q`) is used, else the absolute group.
pub fn cmd_cohomology(input: &Input, deg: usize, pair: Option<PairSpec>, opts: &Options, representatives: bool) -> Result<RunReport> {
    let mut report = RunReport::new(format!("cohomology {} --deg {deg}", input.label));
    let m = &input.manifold;
    let mut q = opts.q;
    let pair = match (pair, input.skeleton) {
        (Some(p), _) => p,
        (None, Some(spec)) => {
            q = spec.q;
            PairSpec::Skeleton(spec.source)
        }
        (None, None) => PairSpec::Absolute,
    };
    let (simplicial, rel) = match pair {
        PairSpec::Absolute => (SimplicialPair::absolute(m.complex.clone()), String::new()),
        PairSpec::Boundary => (SimplicialPair::new(m.complex.clone(), m.boundary())?, ", boundary".into()),
        PairSpec::Skeleton(source) => {
            let sc = SliceComplex::subdivide(m)?;
            let sp = skeleton_pair(&sc, q, SkeletonKind::from(source))?;
            (sp.relative_pair(), format!(", sk_dual(q={q}, {})", if source == SkeletonSource::Dual { "dual" } else { "triangulation" }))
        }
    };
    let h = report.timed("cohomology", || Ok(cohomology(&simplicial, deg, &opts.coeff)))?;
    report.group(format!("H^{deg}({}{rel}; {})", input.label, opts.coeff), h.group());
    if representatives {
        for (i, c) in h.generators().iter().enumerate() {
            let support: Vec<String> = c
                .values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(j, v)| format!("{:?}={v}", simplicial.total.simplex(deg, j)))
                .collect();
            report.fact(format!("generator {i}"), support.join(" "));
        }
    }
    Ok(report)
}

/// What `gauge` evaluates on.
pub enum GaugeTarget {
    Closed(Input),
    /// A standard bordism over a slice: `identity`, `pants`, `copants`,
    /// `bent-in`, `bent-out`, `disk-in` or `disk-out`.
    Bordism { name: String, slice: Input },
}

/// Which dual backgrounds `A` to evaluate `Z_g(M, A)` at: `all`, `A=0`, or
/// `A=c1,c2,…` in invariant-factor coordinates.
pub fn parse_refined(spec: &str, group: &FinAbGroup) -> Result<Option<GroupElement>> {
    if spec == "all" {
        return Ok(None);
    }
    let coords = spec.strip_prefix("A=").ok_or_else(|| Error::Parse(format!("refined spec `{spec}`")))?;
    if coords == "0" {
        return Ok(Some(group.zero()));
    }
    let c: Vec<u64> = coords.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("coordinate `{x}`")))).collect::<Result<_>>()?;
    Ok(Some(group.element(c)?))
}

fn standard_bordism(name: &str, slice: &Arc<Slice>) -> Result<Arc<Bordism>> {
    match name {
        "identity" => slice.identity_cylinder(),
        "pants" => pants(slice),
        "copants" => copants(slice),
        "bent-in" => bent_in(slice),
        "bent-out" => bent_out(slice),
        "disk-in" => disk_in(slice),
        "disk-out" => disk_out(slice),
        _ => Err(Error::Invalid(format!("unknown bordism `{name}`"))),
    }
}

/// Gauges `theory` (only `trivial` is built in) and evaluates it.
pub fn cmd_gauge(theory: &str, target: &GaugeTarget, refined: Option<&str>, double: bool, opts: &Options) -> Result<RunReport> {
    if theory != "trivial" {
        return Err(Error::Invalid(format!("unknown theory `{theory}`; only `trivial` is built in")));
    }
    match target {
        GaugeTarget::Closed(input) => gauge_closed(input, refined, double, opts),
        GaugeTarget::Bordism { name, slice } => {
            let mut report = RunReport::new(format!("gauge trivial --bordism {name} --slice {}", slice.label));
            let symmetry = opts.symmetry(slice.manifold.dim + 1)?;
            let kind = slice.skeleton.map(|s| SkeletonKind::from(s.source)).unwrap_or(SkeletonKind::Triangulation);
            let zg = opts.gauged(&symmetry);
            let m = report.timed("build", || standard_bordism(name, &Slice::standard(&symmetry, &slice.manifold, kind)?))?;
            let value = report.timed("evaluate", || zg.plain_value(&m))?;
            report.matrix(format!("Z_g({name})"), &value);
            report.fact("c", zg.normalization(&m)?);
            report.fact("backgrounds", m.backgrounds.group().order());
            report.fact("symmetry", &symmetry);
            Ok(report)
        }
    }
}

fn gauge_closed(input: &Input, refined: Option<&str>, double: bool, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new(format!("gauge trivial --manifold {}", input.label));
    let symmetry = opts.symmetry(input.manifold.dim)?;
    let zg = opts.gauged(&symmetry);
    let m = closed(&symmetry, input.manifold.clone())?;
    match refined {
        None => {
            let v = report.timed("evaluate", || zg.plain_value(&m))?;
            report.value(format!("Z_g({})", input.label), &v.matrix[0][0]);
        }
        Some(spec) => {
            let which = parse_refined(spec, m.dual()?.backgrounds.group())?;
            let values = report.timed("evaluate", || zg.refined_partition_functions(input.manifold.clone()))?;
            for (a, v) in values.iter().filter(|(a, _)| which.as_ref().is_none_or(|w| w == a)) {
                report.value(format!("Z_g({}, A={a})", input.label), v);
            }
        }
    }
    report.fact("c", zg.normalization(&m)?);
    report.fact("backgrounds", m.backgrounds.group().order());
    report.fact("symmetry", &symmetry);
    if double {
        let d = report.timed("double gauge", || double_gauge_check(&symmetry, input.manifold.clone()))?;
        report.value(format!("Z_gg({})", input.label), &d.kappa_exact);
        report.fact("Z_gg independent of background", d.independent_of_background);
        report.fact("prod |H^i|^((-1)^i)", &d.alternating);
        report.fact("prod |H^i|^((-1)^(i+1))", &d.reciprocal);
    }
    Ok(report)
}

/// The verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Sequences,
    Gauging,
    DoubleGauge,
    Delta,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "axioms" => Ok(Suite::Axioms),
            "sequences" => Ok(Suite::Sequences),
            "gauging" => Ok(Suite::Gauging),
            "double-gauge" => Ok(Suite::DoubleGauge),
            "delta" => Ok(Suite::Delta),
            _ => Err(Error::Parse(format!("unknown suite `{s}`"))),
        }
    }
}

/// Scope of a verification run. Unset fields fall back to per-suite defaults.
#[derive(Default)]
pub struct Scope {
    /// `small` keeps one decoration per bordism, `full` keeps three.
    pub fixtures: Option<String>,
    pub manifolds: Vec<Input>,
    pub sigma: Option<Input>,
}

impl Scope {
    fn per_bordism(&self) -> Result<usize> {
        match self.fixtures.as_deref() {
            None | Some("small") => Ok(1),
            Some("full") => Ok(3),
            Some(other) => Err(Error::Parse(format!("unknown fixture set `{other}`; expected small or full"))),
        }
    }

    fn slice(&self, symmetry_for: impl Fn(usize) -> Result<Symmetry>) -> Result<Arc<Slice>> {
        match &self.sigma {
            None => circle_slice(&symmetry_for(2)?),
            Some(input) => {
                let kind = input.skeleton.map(|s| SkeletonKind::from(s.source)).unwrap_or(SkeletonKind::Triangulation);
                Slice::standard(&symmetry_for(input.manifold.dim + 1)?, &input.manifold, kind)
            }
        }
    }

    fn manifolds(&self, defaults: &[&str]) -> Result<Vec<(String, TriangulatedManifold)>> {
        if self.manifolds.is_empty() {
            defaults.iter().map(|n| Ok((n.to_string(), library(n)?))).collect()
        } else {
            Ok(self.manifolds.iter().map(|i| (i.label.clone(), i.manifold.clone())).collect())
        }
    }
}

pub fn cmd_verify(suite: Suite, scope: &Scope, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new(format!("verify {suite:?}").to_lowercase());
    match suite {
        Suite::Axioms => {
            let slice = scope.slice(|d| opts.symmetry(d))?;
            let fixtures = report.timed("fixtures", || fixture_set(&slice, scope.per_bordism()?))?;
            let z = trivial_theory(slice.symmetry.clone());
            let r = report.timed("trivial", || verify_functor(&z, &fixtures))?;
            report.checks(prefixed("trivial", r));
            let zg = opts.gauged(&slice.symmetry);
            let slice = scope.slice(|d| Ok(opts.symmetry(d)?.dual()))?;
            let fixtures = report.timed("gauged fixtures", || fixture_set(&slice, scope.per_bordism()?))?;
            let r = report.timed("gauged", || verify_functor(&zg, &fixtures))?;
            report.checks(prefixed("gauged", r));
        }
        Suite::Sequences => {
            let mut r = Report::new("sequences");
            for source in [SkeletonSource::Triangulation, SkeletonSource::Dual] {
                let kind = SkeletonKind::from(source);
                let slice = match &scope.sigma {
                    None => Slice::standard(&opts.symmetry(2)?, &library("circle")?, kind)?,
                    Some(i) => Slice::standard(&opts.symmetry(i.manifold.dim + 1)?, &i.manifold, kind)?,
                };
                let subject = format!("{:?} q={}", kind, opts.q).to_lowercase();
                let e = report.timed("exactness", || long_exact_sequence_check(&slice.pair.relative_pair(), opts.q, &opts.coeff))?;
                r.check("iota injective", &subject, e.iota_injective, format!("|Hq(X)| = {}, |im iota| = {}", order(&e.h_x), e.image_iota));
                r.check("exact at Hq(sk_dual)", &subject, e.exact_at_a, format!("|im iota| = {}, |ker d| = {}", e.image_iota, e.kernel_connecting));
                r.check("exact at H(q+1)(X, sk_dual)", &subject, e.exact_at_rel, format!("|im d| = {}, |ker g| = {}", e.image_connecting, e.kernel_g));
                r.check("g surjective", &subject, e.g_surjective, format!("H(q+1)(X) = {:?}", e.h_x_next));
                let cyl = report.timed("cylinder", || slice.identity_cylinder())?;
                let lhs = cyl.backgrounds.group().order();
                let rhs = slice.backgrounds().group().order() * slice.segment.h_a.group().order();
                r.check("cylinder splitting", &subject, lhs == rhs, format!("|H(q+1)(X x I, ends)| = {lhs}, |H(q+1)(X, sk_dual)| |Hq(sk_dual)| = {rhs}"));
            }
            report.checks(r);
        }
        Suite::Gauging => {
            let mut r = Report::new("gauging");
            for (label, m) in scope.manifolds(&["torus2", "sphere2"])? {
                let symmetry = opts.symmetry(m.dim)?;
                let zg = opts.gauged(&symmetry);
                let b = closed(&symmetry, m.clone())?;
                let value = report.timed("partition function", || zg.plain_value(&b))?.matrix[0][0].clone();
                let c = zg.normalization(&b)?.value()?;
                let expected = &c * &Amplitude::from_int(b.backgrounds.group().order() as i64);
                r.check("sum over backgrounds", &label, value == expected, format!("Z_g = {value}, c |backgrounds| = {expected}"));
                let refined = report.timed("refined", || zg.refined_partition_functions(m.clone()))?;
                let ok = refined.iter().all(|(a, v)| if a.is_zero() { *v == value } else { v.is_zero() });
                r.check("dual background selects trivial class", &label, ok, format!("{} dual backgrounds", refined.len()));
            }
            let slice = scope.slice(|d| opts.symmetry(d))?;
            let ok = report.timed("parallel pairing", || pairing_vanishes_on_parallel(&slice))?;
            r.check("parallel classes pair trivially", "slice", ok, "");
            if slice.symmetry.d == 2 {
                let dual = slice.dual()?;
                let torus = Composition::new(&bent_out(&dual)?, &bent_in(&dual)?)?;
                let zg = opts.gauged(&slice.symmetry);
                let glued = crate::bordism::DecoratedBordism { bordism: torus.glued.clone(), class: torus.glued.backgrounds.group().zero() };
                let v = zg.value(&glued)?.matrix[0][0].clone();
                let sector = dual.object(vec![0; dual.backgrounds().group().rank()])?;
                let dim = zg.hilbert(&sector)?.dimension()?;
                r.check("torus from bent annuli", "slice", v == Amplitude::from_int(dim as i64), format!("Z = {v}, dim H = {dim}"));
            }
            report.checks(r);
        }
        Suite::DoubleGauge => {
            let mut r = Report::new("double-gauge");
            for (label, m) in scope.manifolds(&["torus2", "sphere2"])? {
                let d = report.timed("double gauge", || double_gauge_check(&opts.symmetry(m.dim)?, m))?;
                r.check("independent of background", &label, d.independent_of_background, format!("values {}", d.values.join(", ")));
                r.check(
                    "equals prod |H^i|^((-1)^(i+1))",
                    &label,
                    d.matches_reciprocal,
                    format!("Z_gg = {}, orders {:?}, expected {}", d.kappa, d.orders, d.reciprocal),
                );
            }
            report.checks(r);
        }
        Suite::Delta => {
            let mut r = Report::new("delta");
            for (label, m) in scope.manifolds(&["torus2"])? {
                let b = closed(&opts.symmetry(m.dim)?, m)?;
                let d = report.timed("delta", || delta_identity_check(&b))?;
                r.check(
                    "character sum is a delta",
                    &label,
                    d.exact,
                    format!("{} pairs, S(B,B) = {}, {} dual backgrounds", d.pairs, d.constant, d.dual_backgrounds),
                );
            }
            report.checks(r);
        }
    }
    Ok(report)
}

fn prefixed(prefix: &str, r: Report) -> Report {
    let mut out = Report::new(r.title.clone());
    for mut c in r.checks {
        c.subject = format!("{prefix} {}", c.subject);
        out.checks.push(c);
    }
    out
}

fn order(factors: &[u64]) -> u128 {
    factors.iter().map(|&f| f as u128).product()
}
