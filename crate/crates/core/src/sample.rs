//! Seeded random descriptors for property suites and reports.
//!
//! Random points rarely share pieces, so pairs and triples are built from a
//! common ancestor: a shared prefix followed, half of the time, by steps that
//! enter the same piece at the same point and leave it elsewhere. That keeps
//! both divergence cases well represented.

use std::marker::PhantomData;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::pieces::{canonical_pair, Norm, PiecePoint, PieceSpec, PlaneSpec, TreeWord};
use crate::qtypes::{QType, TypeInterval};
use crate::scalar::Scalar;
use crate::treeprod::{Alpha, Descriptor, Step};

#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    pub planes: Vec<PlaneSpec>,
    pub tree: bool,
    pub copies: usize,
    pub branches: usize,
    pub max_steps: usize,
    /// Coordinates are `k / den` with `|k| <= coord_range · den`.
    pub coord_range: i64,
    pub denominators: Vec<i64>,
}

impl SampleConfig {
    /// `L1` planes and the tree, with dyadic coordinates. Exact mode.
    pub fn l1_tree() -> Self {
        SampleConfig {
            planes: vec![PlaneSpec::l1_plane()],
            tree: true,
            copies: 3,
            branches: 3,
            max_steps: 5,
            coord_range: 3,
            denominators: vec![1, 2, 4, 8, 16],
        }
    }

    /// Every norm that exact mode supports.
    pub fn exact() -> Self {
        SampleConfig { planes: vec![PlaneSpec::l1_plane(), PlaneSpec::new(2, Norm::LInf)], ..Self::l1_tree() }
    }

    /// Adds Euclidean planes; float mode only.
    pub fn float() -> Self {
        let mut cfg = Self::exact();
        cfg.planes.push(PlaneSpec::new(2, Norm::L2));
        cfg
    }

    pub fn tree_only() -> Self {
        SampleConfig { planes: Vec::new(), ..Self::l1_tree() }
    }
}

pub struct Sampler<S> {
    rng: ChaCha8Rng,
    cfg: SampleConfig,
    _scalar: PhantomData<S>,
}

impl<S: Scalar> Sampler<S> {
    pub fn new(seed: u64, cfg: SampleConfig) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), cfg, _scalar: PhantomData }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn config(&self) -> &SampleConfig {
        &self.cfg
    }

    fn den(&mut self) -> i64 {
        *self.cfg.denominators.choose(&mut self.rng).expect("at least one denominator")
    }

    fn coord(&mut self) -> S {
        let den = self.den();
        let r = self.cfg.coord_range * den;
        S::from_ratio(self.rng.gen_range(-r..=r), den)
    }

    fn positive(&mut self) -> S {
        let den = self.den();
        S::from_ratio(self.rng.gen_range(1..=self.cfg.coord_range * den), den)
    }

    fn alpha(&mut self) -> Alpha {
        let n_planes = self.cfg.planes.len();
        let choices = n_planes + usize::from(self.cfg.tree);
        let k = self.rng.gen_range(0..choices);
        if k == n_planes {
            return Alpha::Tree;
        }
        let copy = format!("c{}", self.rng.gen_range(0..self.cfg.copies));
        Alpha::piece(self.cfg.planes[k], copy)
    }

    fn word(&mut self, max_letters: usize) -> TreeWord<S> {
        let n = self.rng.gen_range(0..=max_letters);
        let letters: Vec<(String, S)> = (0..n)
            .map(|_| {
                let label = ((b'A' + self.rng.gen_range(0..self.cfg.branches) as u8) as char).to_string();
                (label, self.positive())
            })
            .collect();
        TreeWord::reduced(letters)
    }

    /// A random point of the piece; the base point a third of the time.
    pub fn point(&mut self, spec: &PieceSpec) -> PiecePoint<S> {
        let at_base = self.rng.gen_ratio(1, 3);
        match spec {
            PieceSpec::Plane(p) if at_base => PiecePoint::Plane(vec![S::zero(); p.dim]),
            PieceSpec::Plane(p) => PiecePoint::Plane((0..p.dim).map(|_| self.coord()).collect()),
            PieceSpec::Tree if at_base => PiecePoint::root(),
            PieceSpec::Tree => PiecePoint::Tree(self.word(2)),
        }
    }

    /// A step of `alpha` from `entry` to a fresh random point.
    pub fn step_from(&mut self, alpha: &Alpha, entry: &PiecePoint<S>) -> Step<S> {
        let spec = alpha.spec();
        loop {
            if let Ok(step) = Step::new(alpha.clone(), entry.clone(), self.point(&spec)) {
                return step;
            }
        }
    }

    /// A step that may follow `prev` in a valid descriptor.
    pub fn step_after(&mut self, prev: Option<&Step<S>>) -> Step<S> {
        loop {
            let alpha = self.alpha();
            let entry = self.point(&alpha.spec());
            let step = self.step_from(&alpha, &entry);
            let mut probe = Descriptor::empty();
            if let Some(p) = prev {
                probe.push(p.clone()).expect("single step");
            }
            if probe.push(step.clone()).is_ok() {
                return step;
            }
        }
    }

    /// Appends `k` random steps.
    pub fn extend(&mut self, f: &Descriptor<S>, k: usize) -> Descriptor<S> {
        let mut out = f.clone();
        for _ in 0..k {
            let step = self.step_after(out.steps().last());
            out.push(step).expect("step_after keeps junctions clean");
        }
        out
    }

    pub fn descriptor(&mut self) -> Descriptor<S> {
        let k = self.rng.gen_range(0..=self.cfg.max_steps);
        self.extend(&Descriptor::empty(), k)
    }

    /// A point sharing a random prefix with `f`; half of the time it then
    /// enters `f`'s next piece at the same point and leaves elsewhere.
    pub fn relative(&mut self, f: &Descriptor<S>) -> Descriptor<S> {
        let keep = self.rng.gen_range(0..=f.len());
        let mut out = f.prefix(keep);
        if keep < f.len() && self.rng.gen_bool(0.5) {
            let next = &f.steps()[keep];
            let branch = self.step_from(next.alpha(), next.entry());
            if !branch.same_as(next) {
                out.push(branch).expect("same entry as a valid step");
            }
        }
        let extra = self.rng.gen_range(0..=self.cfg.max_steps / 2 + 1);
        self.extend(&out, extra)
    }

    pub fn pair(&mut self) -> (Descriptor<S>, Descriptor<S>) {
        let f = self.descriptor();
        let g = self.relative(&f);
        (f, g)
    }

    pub fn triple(&mut self) -> (Descriptor<S>, Descriptor<S>, Descriptor<S>) {
        let f = self.descriptor();
        let g = self.relative(&f);
        let h = if self.rng.gen_bool(0.5) { self.relative(&f) } else { self.relative(&g) };
        let mut t = [f, g, h];
        t.shuffle(&mut self.rng);
        let [f, g, h] = t;
        (f, g, h)
    }

    /// A descriptor whose steps all lie in the transversal tree.
    pub fn tree_descriptor(&mut self) -> Descriptor<S> {
        let mut out = Descriptor::empty();
        let k = self.rng.gen_range(0..=self.cfg.max_steps.min(3));
        while out.len() < k {
            let entry = self.point(&PieceSpec::Tree);
            let step = self.step_from(&Alpha::Tree, &entry);
            let _ = out.push(step);
        }
        out
    }

    /// A parameter in `[0, max]` on a grid of sixteenths, endpoints included.
    pub fn parameter(&mut self, max: &S) -> S {
        let k = self.rng.gen_range(0..=16);
        max.clone() * S::from_ratio(k, 16)
    }

    /// A nontrivial finite type with one to three intervals over the
    /// configured planes.
    pub fn qtype(&mut self) -> QType<S> {
        assert!(!self.cfg.planes.is_empty(), "types need a plane model");
        let count = self.rng.gen_range(1..=3);
        let mut at = S::zero();
        let mut intervals = Vec::with_capacity(count);
        for i in 0..count {
            // the first gap is always positive; later ones may vanish
            if i == 0 || self.rng.gen_bool(0.7) {
                at = at + self.positive();
            }
            let spec = PieceSpec::Plane(*self.cfg.planes.choose(&mut self.rng).expect("checked"));
            let cpair = loop {
                let (x, y) = (self.point(&spec), self.point(&spec));
                if let Ok(c) = canonical_pair(&spec, &x, &y) {
                    break c;
                }
            };
            let b = at.clone() + cpair.dist();
            intervals.push(TypeInterval { a: at.clone(), b: b.clone(), cpair });
            at = b;
        }
        let total = if self.rng.gen_bool(0.5) { at.clone() + self.positive() } else { at };
        QType::new(total, intervals).expect("sampled types are well formed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::treeprod::divergence;

    #[test]
    fn deterministic_per_seed() {
        let mut a = Sampler::<Rational>::new(7, SampleConfig::exact());
        let mut b = Sampler::<Rational>::new(7, SampleConfig::exact());
        for _ in 0..50 {
            assert_eq!(a.triple(), b.triple());
        }
    }

    #[test]
    fn samples_are_valid_and_varied() {
        let mut s = Sampler::<Rational>::new(1, SampleConfig::l1_tree());
        let mut case1 = 0;
        for _ in 0..500 {
            let (f, g) = s.pair();
            f.validate().unwrap();
            g.validate().unwrap();
            if divergence(&f, &g).case.is_case1() {
                case1 += 1;
            }
        }
        assert!(case1 > 50, "only {case1} case-1 pairs");
        for _ in 0..100 {
            assert!(s.tree_descriptor().is_transversal_base());
            let t = s.qtype();
            assert!(!t.is_trivial());
        }
    }
}
