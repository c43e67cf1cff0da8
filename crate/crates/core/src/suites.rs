//! Seeded property suites over sampled descriptors.
//!
//! Each suite runs a fixed list of named checks and counts cases and
//! violations per check. With `inject_fault` the suites use a deliberately
//! broken distance (and, for types, colliding salts) so that a runner that
//! reports zero violations can be trusted to notice real ones.

use std::fmt;
use std::str::FromStr;

use crate::geom::{
    classify_direction, component_relation, geodesic_point, geodesic_point_with, map_pieces, median, phi, phi_inv,
    ComponentRelation, CoordinateIdentity, Direction, Median, PieceMap,
};
use crate::pieces::{piece_dist, GeodesicSelector, Norm, PieceSpec, PlaneSpec};
use crate::qtypes::{
    distinct_components, distinct_pieces, initial_subtype, realize_type, type_at, type_of, types_equivalent, QType,
    TypeInterval, TypeOf,
};
use crate::sample::{SampleConfig, Sampler};
use crate::scalar::{NumericMode, Scalar};
use crate::treeprod::{dist, divergence, Alpha, Descriptor, DivergenceCase, Step};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteName {
    Metric,
    Isometry,
    Geodesic,
    Types,
    Bigon,
    Ble,
}

impl SuiteName {
    pub const ALL: [SuiteName; 6] =
        [SuiteName::Metric, SuiteName::Isometry, SuiteName::Geodesic, SuiteName::Types, SuiteName::Bigon, SuiteName::Ble];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteName::Metric => "metric",
            SuiteName::Isometry => "isometry",
            SuiteName::Geodesic => "geodesic",
            SuiteName::Types => "types",
            SuiteName::Bigon => "bigon",
            SuiteName::Ble => "ble",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    /// Number of sampled points that get the `N`-fold witness checks of the
    /// types suite.
    pub witness_points: usize,
    /// `N` for those checks.
    pub witness_count: usize,
    pub inject_fault: bool,
}

impl SuiteConfig {
    pub fn new(seed: u64, samples: usize) -> Self {
        SuiteConfig { seed, samples, witness_points: 10, witness_count: 100, inject_fault: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckStat {
    pub check: &'static str,
    pub cases: u64,
    pub violations: u64,
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub mode: NumericMode,
    pub seed: u64,
    pub checks: Vec<CheckStat>,
}

impl SuiteReport {
    pub fn violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckStat> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub const CSV_HEADER: &'static str = "suite,mode,seed,check,cases,violations";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for c in &self.checks {
            out.push_str(&format!("{},{},{},{},{},{}\n", self.suite, self.mode, self.seed, c.check, c.cases, c.violations));
        }
        out
    }
}

struct Recorder {
    checks: Vec<CheckStat>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { checks: Vec::new() }
    }

    fn record(&mut self, check: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let i = match self.checks.iter().position(|c| c.check == check) {
            Some(i) => i,
            None => {
                self.checks.push(CheckStat { check, cases: 0, violations: 0, first_failure: None });
                self.checks.len() - 1
            }
        };
        let stat = &mut self.checks[i];
        stat.cases += 1;
        if !ok {
            stat.violations += 1;
            if stat.first_failure.is_none() {
                stat.first_failure = Some(detail());
            }
        }
    }
}

struct Ctx<S> {
    rec: Recorder,
    sampler: Sampler<S>,
    cfg: SuiteConfig,
}

impl<S: Scalar> Ctx<S> {
    /// The distance under test; broken on purpose when a fault is injected.
    fn d(&self, f: &Descriptor<S>, g: &Descriptor<S>) -> S {
        let d = dist(f, g);
        if self.cfg.inject_fault && f.len().is_multiple_of(2) && !g.len().is_multiple_of(2) {
            d + S::from_int(1)
        } else {
            d
        }
    }

    fn eq(&mut self, check: &'static str, a: &S, b: &S, what: impl FnOnce() -> String) {
        let ok = a.approx_eq(b);
        self.rec.record(check, ok, || format!("{}: {:?} != {:?}", what(), a, b));
    }

    fn le(&mut self, check: &'static str, a: &S, b: &S, what: impl FnOnce() -> String) {
        let ok = a.approx_le(b);
        self.rec.record(check, ok, || format!("{}: {:?} > {:?}", what(), a, b));
    }
}

fn show<S: Scalar>(f: &Descriptor<S>) -> String {
    format!("{f:?}")
}

/// Sampling configuration used by a suite in the numeric mode of `S`.
pub fn suite_sample_config<S: Scalar>(suite: SuiteName) -> SampleConfig {
    match (suite, S::MODE) {
        (SuiteName::Bigon | SuiteName::Ble, _) => SampleConfig::l1_tree(),
        (_, NumericMode::Exact) => SampleConfig::exact(),
        (_, NumericMode::Float) => SampleConfig::float(),
    }
}

pub fn run_suite<S: Scalar>(suite: SuiteName, cfg: &SuiteConfig) -> SuiteReport {
    let sampler = Sampler::<S>::new(cfg.seed, suite_sample_config::<S>(suite));
    let mut ctx = Ctx { rec: Recorder::new(), sampler, cfg: cfg.clone() };
    match suite {
        SuiteName::Metric => metric_suite(&mut ctx),
        SuiteName::Isometry => isometry_suite(&mut ctx),
        SuiteName::Geodesic => geodesic_suite(&mut ctx),
        SuiteName::Types => types_suite(&mut ctx),
        SuiteName::Bigon => bigon_suite(&mut ctx),
        SuiteName::Ble => ble_suite(&mut ctx),
    }
    SuiteReport { suite, mode: S::MODE, seed: cfg.seed, checks: ctx.rec.checks }
}

pub fn run_suite_in_mode(suite: SuiteName, mode: NumericMode, cfg: &SuiteConfig) -> SuiteReport {
    match mode {
        NumericMode::Exact => run_suite::<crate::scalar::Rational>(suite, cfg),
        NumericMode::Float => run_suite::<f64>(suite, cfg),
    }
}

fn metric_suite<S: Scalar>(ctx: &mut Ctx<S>) {
    for _ in 0..ctx.cfg.samples {
        let (f, g, h) = ctx.sampler.triple();
        let pts = [&f, &g, &h];
        for (i, &x) in pts.iter().enumerate() {
            let zero = ctx.d(x, x);
            ctx.eq("identity", &zero, &S::zero(), || show(x));
            for &y in &pts[i + 1..] {
                let (dxy, dyx) = (ctx.d(x, y), ctx.d(y, x));
                ctx.eq("symmetry", &dxy, &dyx, || format!("{} / {}", show(x), show(y)));
                let same = x.same_as(y);
                ctx.rec.record("zero_iff_equal", same == dxy.is_negligible(), || format!("{} / {}", show(x), show(y)));
            }
        }
        for (x, y, z) in [(&f, &g, &h), (&g, &h, &f), (&h, &f, &g)] {
            let lhs = ctx.d(x, z);
            let rhs = ctx.d(x, y) + ctx.d(y, z);
            ctx.le("triangle", &lhs, &rhs, || format!("{} / {} / {}", show(x), show(y), show(z)));
        }
        for (x, y) in [(&f, &g), (&g, &h), (&f, &h)] {
            let d = ctx.d(x, y);
            let div = divergence(x, y);
            let (dx, dy) = (x.total_length(), y.total_length());
            let low = (dx.clone() - dy.clone()).abs();
            let high = dx + dy - div.s.clone() - div.s.clone();
            ctx.le("lemma_d_lower", &low, &d, || format!("{} / {}", show(x), show(y)));
            ctx.le("lemma_d_upper", &d, &high, || format!("{} / {}", show(x), show(y)));
            if div.case.is_case1() {
                let positive = S::zero().definitely_lt(&d);
                ctx.rec.record("case1_positive", positive, || format!("{} / {}", show(x), show(y)));
            }
        }
        if let (Ok(fg), Ok(fh)) = (f.concat_raw(&g), f.concat_raw(&h)) {
            let (a, b) = (ctx.d(&fg, &fh), ctx.d(&g, &h));
            ctx.eq("concat_invariance", &a, &b, || format!("{} ⊔ {} / {}", show(&f), show(&g), show(&h)));
        }
        let df = f.total_length();
        let t = ctx.sampler.parameter(&df);
        let p = f.restrict_prefix(&t).expect("parameter within range");
        let gap = ctx.d(&p, &f);
        ctx.eq("prefix_cauchy", &gap, &(df - t), || show(&f));
        let back = f.concat_normalized(&f.reverse());
        ctx.rec.record("cancel_reverse", back.is_empty(), || show(&f));
    }
}

fn isometry_suite<S: Scalar>(ctx: &mut Ctx<S>) {
    for _ in 0..ctx.cfg.samples {
        let (f, g, h) = ctx.sampler.triple();
        let (pg, ph) = (phi(&f, &g), phi(&f, &h));
        let (a, b) = (ctx.d(&pg, &ph), ctx.d(&g, &h));
        ctx.eq("preserves_dist", &a, &b, || format!("{} / {} / {}", show(&f), show(&g), show(&h)));
        let moved = ctx.d(&pg, &Descriptor::empty());
        let orig = ctx.d(&f, &g);
        ctx.eq("moves_f_to_base", &moved, &orig, || format!("{} / {}", show(&f), show(&g)));
        ctx.rec.record("phi_f_f_empty", phi(&f, &f).is_empty(), || show(&f));
        let back = phi(&f, &phi_inv(&f, &g));
        ctx.rec.record("phi_after_inverse", back.same_as(&g), || format!("{} / {}", show(&f), show(&g)));
        let back = phi_inv(&f, &pg);
        ctx.rec.record("inverse_after_phi", back.same_as(&g), || format!("{} / {}", show(&f), show(&g)));
        ctx.rec.record("phi_valid", pg.validate().is_ok(), || format!("{} / {}", show(&f), show(&g)));
    }
}

const GEODESIC_PARAMETERS: usize = 10;

fn geodesic_parameters<S: Scalar>(ctx: &mut Ctx<S>, total: &S) -> Vec<S> {
    let mut ts = vec![S::zero(), total.clone()];
    while ts.len() < GEODESIC_PARAMETERS {
        ts.push(ctx.sampler.parameter(total));
    }
    ts
}

fn geodesic_suite<S: Scalar>(ctx: &mut Ctx<S>) {
    for _ in 0..ctx.cfg.samples {
        let (f, g) = ctx.sampler.pair();
        let total = dist(&f, &g);
        let ts = geodesic_parameters(ctx, &total);
        for selector in [GeodesicSelector::CoordinateOrder, GeodesicSelector::ReversedOrder] {
            let pts: Vec<Descriptor<S>> = ts
                .iter()
                .map(|t| geodesic_point_with(&f, &g, t, selector).expect("parameter within range"))
                .collect();
            for (i, (p, s)) in pts.iter().zip(&ts).enumerate() {
                let from_f = ctx.d(&f, p);
                ctx.eq("distance_from_start", &from_f, s, || format!("{} / {} t={s:?}", show(&f), show(&g)));
                let to_g = ctx.d(p, &g);
                ctx.eq("distance_to_end", &to_g, &(total.clone() - s.clone()), || {
                    format!("{} / {} t={s:?}", show(&f), show(&g))
                });
                for (q, t) in pts[i + 1..].iter().zip(&ts[i + 1..]) {
                    let dpq = ctx.d(p, q);
                    let gap = (s.clone() - t.clone()).abs();
                    ctx.eq("unit_speed", &dpq, &gap, || format!("{} / {} s={s:?} t={t:?}", show(&f), show(&g)));
                }
            }
            ctx.rec.record("endpoints", pts[0].same_as(&f) && pts[1].same_as(&g), || {
                format!("{} / {}", show(&f), show(&g))
            });
        }
    }
}

fn relabel<S: Scalar>(f: &Descriptor<S>, tag: &str) -> Descriptor<S> {
    use crate::pieces::{PiecePoint, TreeWord};
    let word = |p: &PiecePoint<S>| match p {
        PiecePoint::Tree(w) => {
            PiecePoint::Tree(TreeWord::reduced(w.letters().iter().map(|(l, len)| (format!("{tag}{l}"), len.clone()))))
        }
        other => other.clone(),
    };
    let steps = f
        .steps()
        .iter()
        .map(|s| {
            let alpha = match s.alpha() {
                Alpha::Tree => Alpha::Tree,
                Alpha::Piece { spec, copy } => Alpha::piece(*spec, format!("{tag}{copy}")),
            };
            Step::new(alpha, word(s.entry()), word(s.exit())).expect("relabeling keeps points distinct")
        })
        .collect();
    Descriptor::new(steps).expect("injective relabeling keeps junctions clean")
}

fn with_tail<S: Scalar>(tau: &QType<S>, tail: TypeInterval<S>) -> QType<S> {
    let shift = tau.total.clone() + S::from_int(1);
    let len = tail.b.clone() - tail.a.clone();
    let moved = TypeInterval { a: shift.clone(), b: shift.clone() + len, cpair: tail.cpair };
    let total = moved.b.clone();
    let mut intervals = tau.intervals.clone();
    intervals.push(moved);
    QType::new(total, intervals).expect("appending after the end keeps the type valid")
}

fn types_suite<S: Scalar>(ctx: &mut Ctx<S>) {
    let fault = ctx.cfg.inject_fault;
    let salt = |i: usize, k: usize| if fault { "s".to_owned() } else { format!("s{i}_{k}") };
    let mut previous: Vec<QType<S>> = Vec::new();
    for i in 0..ctx.cfg.samples {
        let tau = ctx.sampler.qtype();
        let at = ctx.sampler.descriptor();
        let g0 = realize_type(&Descriptor::empty(), &tau, &salt(i, 0));
        ctx.rec.record("round_trip_base", type_of(&g0) == TypeOf::Limit(tau.clone()), || format!("{tau:?}"));
        let g = realize_type(&at, &tau, &salt(i, 1));
        let back = type_at(&at, &g);
        let ok = matches!(&back, TypeOf::Limit(t) if t.same_as(&tau));
        ctx.rec.record("round_trip", ok, || format!("{tau:?} at {}", show(&at)));
        let h = realize_type(&at, &tau, &salt(i, 2));
        let rel = component_relation(&at, &g, &h);
        ctx.rec.record("salts_separate", rel == Ok(ComponentRelation::Different), || format!("{tau:?}"));

        let relabeled = relabel(&g0, "x");
        ctx.rec.record("label_invariance", type_of(&relabeled) == type_of(&g0), || show(&g0));

        ctx.rec.record("equiv_reflexive", types_equivalent(&tau, &tau) == Ok(true), || format!("{tau:?}"));
        if let Some(other) = previous.last() {
            let ab = types_equivalent(&tau, other).expect("nontrivial");
            let ba = types_equivalent(other, &tau).expect("nontrivial");
            ctx.rec.record("equiv_symmetric", ab == ba, || format!("{tau:?} / {other:?}"));
            if ab {
                let r = tau.intervals[0].b.clone();
                let x = initial_subtype(&tau, &r).ok().flatten();
                let y = initial_subtype(other, &r).ok().flatten();
                let ok = matches!((&x, &y), (Some(x), Some(y)) if x.same_as(y));
                ctx.rec.record("equiv_shares_first_interval", ok, || format!("{tau:?} / {other:?}"));
            }
        }
        if previous.len() >= 2 {
            let (a, b) = (&previous[previous.len() - 2], &previous[previous.len() - 1]);
            let (ab, bc, ac) = (
                types_equivalent(a, b).expect("nontrivial"),
                types_equivalent(b, &tau).expect("nontrivial"),
                types_equivalent(a, &tau).expect("nontrivial"),
            );
            if ab && bc {
                ctx.rec.record("equiv_transitive", ac, || format!("{a:?} / {b:?} / {tau:?}"));
            }
        }
        let tail = ctx.sampler.qtype().intervals[0].clone();
        let longer = with_tail(&tau, tail);
        ctx.rec.record("equiv_trailing", types_equivalent(&tau, &longer) == Ok(true), || format!("{tau:?}"));

        // a sibling type that shares the first interval is equivalent, one that
        // moves it is not
        let mut moved = tau.clone();
        let shift = S::from_ratio(1, 16);
        for iv in &mut moved.intervals {
            iv.a = iv.a.clone() + shift.clone();
            iv.b = iv.b.clone() + shift.clone();
        }
        moved.total = moved.total.clone() + shift;
        ctx.rec.record("equiv_detects_shift", types_equivalent(&tau, &moved) == Ok(false), || format!("{tau:?}"));

        let (c, d) = (ctx.sampler.descriptor(), ctx.sampler.relative(&at));
        if !c.same_as(&at) && !d.same_as(&at) {
            let rel = component_relation(&at, &c, &d).expect("distinct from center");
            let (dc, dd) = (classify_direction(&at, &c).expect("distinct"), classify_direction(&at, &d).expect("distinct"));
            match (&dc, &dd) {
                (Direction::NonLimit(p), Direction::NonLimit(q)) => {
                    let expect = if p == q { ComponentRelation::Same } else { ComponentRelation::Different };
                    ctx.rec.record("direction_agrees_with_components", rel == expect, || {
                        format!("{} / {} / {}", show(&at), show(&c), show(&d))
                    });
                }
                (Direction::NonLimit(_), Direction::Limit) | (Direction::Limit, Direction::NonLimit(_)) => {
                    ctx.rec.record("direction_agrees_with_components", rel == ComponentRelation::Different, || {
                        format!("{} / {} / {}", show(&at), show(&c), show(&d))
                    });
                }
                (Direction::Limit, Direction::Limit) => {}
            }
        }

        if i < ctx.cfg.witness_points {
            let n = ctx.cfg.witness_count;
            let comps = if fault {
                (0..n).map(|_| realize_type(&at, &tau, "s")).collect()
            } else {
                distinct_components(&at, &tau, n)
            };
            let mut ok = comps.len() == n;
            for (k, x) in comps.iter().enumerate() {
                ok &= type_at(&at, x) == TypeOf::Limit(tau.clone());
                for y in &comps[k + 1..] {
                    ok &= component_relation(&at, x, y) == Ok(ComponentRelation::Different);
                }
            }
            ctx.rec.record("n_distinct_components", ok, || format!("{tau:?} at {}", show(&at)));

            let planes = ctx.sampler.config().planes.clone();
            for plane in planes {
                let spec = PieceSpec::Plane(plane);
                let wit = distinct_pieces(&at, &spec, n).expect("plane spec");
                let mut ok = wit.len() == n;
                for (k, x) in wit.iter().enumerate() {
                    let dx = ctx.d(&at, &x.witness);
                    for y in &wit[k + 1..] {
                        let dy = ctx.d(&at, &y.witness);
                        let div = divergence(&phi(&at, &x.witness), &phi(&at, &y.witness));
                        ok &= div.s.is_negligible() && matches!(div.case, DivergenceCase::Case2);
                        ok &= ctx.d(&x.witness, &y.witness).approx_eq(&(dx.clone() + dy));
                    }
                }
                ctx.rec.record("n_distinct_pieces", ok, || format!("{spec} at {}", show(&at)));
            }
        }
        previous.push(tau);
    }
}

fn bigon_suite<S: Scalar>(ctx: &mut Ctx<S>) {
    let l1 = PlaneSpec::l1_plane();
    for i in 0..ctx.cfg.samples {
        // an L1 step that moves both coordinates, so the two selectors differ
        let f = ctx.sampler.descriptor();
        let alpha = Alpha::piece(l1, format!("c{}", i % 3));
        let moved = loop {
            let mut head = ctx.sampler.descriptor();
            let entry = ctx.sampler.point(&PieceSpec::Plane(l1));
            let s = ctx.sampler.step_from(&alpha, &entry);
            let (x, y) = (s.entry().as_plane().expect("plane"), s.exit().as_plane().expect("plane"));
            if !x[0].approx_eq(&y[0]) && !x[1].approx_eq(&y[1]) && head.push(s).is_ok() {
                break head;
            }
        };
        let moved = ctx.sampler.extend(&moved, 1);
        let g = phi_inv(&f, &moved);
        bigon_check(ctx, &f, &g);

        let (a, b, c) = ctx.sampler.triple();
        median_check(ctx, &a, &b, &c);

        let (x, y) = (ctx.sampler.tree_descriptor(), ctx.sampler.tree_descriptor());
        let total = dist(&x, &y);
        for t in geodesic_parameters(ctx, &total) {
            let p = geodesic_point(&x, &y, &t).expect("within range");
            let ok = p.is_transversal_base() && phi(&x, &p).is_transversal_base();
            ctx.rec.record("transversal_closure", ok, || format!("{} / {} t={t:?}", show(&x), show(&y)));
        }
    }
}

fn bigon_check<S: Scalar>(ctx: &mut Ctx<S>, f: &Descriptor<S>, g: &Descriptor<S>) {
    let moved = phi(f, g);
    let breaks = moved.break_points();
    let total = moved.total_length();
    // steps whose interior may host a bigon
    let plane_steps: Vec<usize> = (0..moved.len())
        .filter(|&k| {
            let s = &moved.steps()[k];
            matches!(s.alpha(), Alpha::Piece { spec, .. } if spec.norm != Norm::L2)
        })
        .collect();
    let mut ts = geodesic_parameters(ctx, &total);
    ts.extend(breaks.iter().cloned());
    ts.extend(plane_steps.iter().map(|&k| (breaks[k].clone() + breaks[k + 1].clone()) * S::from_ratio(1, 2)));
    let mut differs = false;
    for t in &ts {
        let p = geodesic_point_with(f, g, t, GeodesicSelector::CoordinateOrder).expect("within range");
        let q = geodesic_point_with(f, g, t, GeodesicSelector::ReversedOrder).expect("within range");
        let host = plane_steps.iter().copied().find(|&k| breaks[k].definitely_lt(t) && t.definitely_lt(&breaks[k + 1]));
        if p.same_as(&q) {
            continue;
        }
        differs = true;
        let Some(k) = host else {
            ctx.rec.record("bigon_confinement", false, || format!("{} / {} t={t:?} outside pieces", show(f), show(g)));
            continue;
        };
        // both points sit in the placement entered by step k
        let (pp, qq) = (phi(f, &p), phi(f, &q));
        let div = divergence(&pp, &qq);
        let step = &moved.steps()[k];
        let ok = div.index == k
            && matches!(&div.case, DivergenceCase::Case1 { alpha, entry, .. }
                if alpha == step.alpha() && entry == step.entry());
        ctx.rec.record("bigon_confinement", ok, || format!("{} / {} t={t:?}", show(f), show(g)));
        let (dp, dq) = (ctx.d(f, &p), ctx.d(f, &q));
        ctx.eq("bigon_same_parameter", &dp, &dq, || format!("{} / {} t={t:?}", show(f), show(g)));
    }
    ctx.rec.record("bigon_observed", differs, || format!("{} / {}", show(f), show(g)));
}

fn median_check<S: Scalar>(ctx: &mut Ctx<S>, f: &Descriptor<S>, g: &Descriptor<S>, h: &Descriptor<S>) {
    let m = median(f, g, h);
    let verts = [f, g, h];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let (x, y) = (verts[i], verts[j]);
        let (px, py) = (m.gate_point(i), m.gate_point(j));
        let side = ctx.d(x, y);
        let through = ctx.d(x, &px) + ctx.d(&px, &py) + ctx.d(&py, y);
        ctx.eq("median_additivity", &side, &through, || format!("{} / {} / {}", show(f), show(g), show(h)));
        if let Median::Gates { placement, gates } = &m {
            let inner = piece_dist(&placement.spec(), &gates[i], &gates[j]).expect("gates lie in the piece");
            let dd = ctx.d(&px, &py);
            ctx.eq("median_gate_distance", &dd, &inner, || format!("{} / {} / {}", show(f), show(g), show(h)));
        }
    }
}

fn ble_suite<S: Scalar>(ctx: &mut Ctx<S>) {
    let source = PlaneSpec::l1_plane();
    let target = PlaneSpec::new(2, Norm::L2);
    let map = CoordinateIdentity::new().with(source, target);
    let k = <CoordinateIdentity as PieceMap<S, f64>>::lipschitz(&map, &source);
    let empty: Descriptor<f64> = map_pieces(&Descriptor::<S>::empty(), &map).expect("nothing to map");
    ctx.rec.record("base_to_base", empty.is_empty(), String::new);
    for _ in 0..ctx.cfg.samples {
        let (f, g) = ctx.sampler.pair();
        let (mf, mg): (Descriptor<f64>, Descriptor<f64>) =
            (map_pieces(&f, &map).expect("L1 source"), map_pieces(&g, &map).expect("L1 source"));
        let d = ctx.d(&f, &g).to_f64();
        let dm = dist(&mf, &mg);
        let tol = crate::scalar::FLOAT_TOLERANCE;
        let ok = d / k <= dm + tol && dm <= k * d + tol;
        ctx.rec.record("bi_lipschitz", ok, || format!("{} / {}: {d} vs {dm}", show(&f), show(&g)));
        let labels_kept = f.steps().iter().zip(mf.steps()).all(|(a, b)| match (a.alpha(), b.alpha()) {
            (Alpha::Piece { copy: x, .. }, Alpha::Piece { copy: y, spec }) => x == y && *spec == target,
            (Alpha::Tree, Alpha::Tree) => a.length().to_f64() == b.length().to_f64(),
            _ => false,
        });
        ctx.rec.record("labels_kept", labels_kept && mf.len() == f.len(), || show(&f));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn small(seed: u64) -> SuiteConfig {
        SuiteConfig { witness_points: 2, witness_count: 8, ..SuiteConfig::new(seed, 60) }
    }

    #[test]
    fn suites_pass_in_both_modes() {
        for suite in SuiteName::ALL {
            let r = run_suite::<Rational>(suite, &small(5));
            assert!(r.passed(), "{suite} exact: {:#?}", r.checks);
            let r = run_suite::<f64>(suite, &small(6));
            assert!(r.passed(), "{suite} float: {:#?}", r.checks);
        }
    }

    #[test]
    fn injected_faults_are_caught() {
        for suite in SuiteName::ALL {
            let cfg = SuiteConfig { inject_fault: true, ..small(9) };
            let r = run_suite::<Rational>(suite, &cfg);
            assert!(!r.passed(), "{suite} missed the fault");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_suite::<Rational>(SuiteName::Metric, &small(11));
        let b = run_suite::<Rational>(SuiteName::Metric, &small(11));
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.to_csv().starts_with(SuiteReport::CSV_HEADER));
    }

    #[test]
    fn suite_names_parse() {
        for s in SuiteName::ALL {
            assert_eq!(s.as_str().parse::<SuiteName>().unwrap(), s);
        }
        assert!("nope".parse::<SuiteName>().is_err());
    }
}
