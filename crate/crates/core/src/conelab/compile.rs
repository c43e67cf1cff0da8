//! Compiling descriptors over `{R² with L1} ∪ TREE` into elements of
//! `Z² * Z` at scale `n`.
//!
//! Each step is preceded by a separator `t^c`. Plane steps become `a^(Δ₁n)
//! b^(Δ₂n)`. A tree point `w` is sent to `elt(w) = Π U_j t^(len·n) U_j⁻¹`
//! over its letters, with `U_j = a^j b^j` and `j` the code of the branch
//! label, and a tree step `(x, y)` becomes `elt(x)⁻¹ elt(y)`.
//!
//! Separator codes depend on the copy and the entry point (planes) or on the
//! entry point alone (tree), so two steps share a separator exactly when
//! they enter the same piece at the same point. Under that rule the compiled
//! word is already reduced apart from the common prefix and one junction,
//! which gives `n·D ≤ dist ≤ n·D + C` with `C` from [`junction_bound`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::group::{GroupElement, Syllable};
use crate::pieces::{PiecePoint, PlaneSpec, TreeWord};
use crate::scalar::{Rational, Scalar};
use crate::treeprod::{Alpha, Descriptor, Step};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CompileError {
    #[error("only 2-dimensional L1 planes compile, got {0}")]
    UnsupportedSpec(PlaneSpec),
    #[error("coordinate has no exact rational value")]
    NonRationalCoordinate,
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("label `{0}` is missing from the registry")]
    Unregistered(String),
    #[error("compiled exponent does not fit in 64 bits")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegistryKey {
    /// Separator before a plane step.
    Piece { copy: String, entry: Vec<Rational> },
    /// Separator before a tree step.
    TreeJunction { entry: Vec<(String, Rational)> },
    /// Branch label of the transversal tree.
    Branch(String),
}

impl std::fmt::Display for RegistryKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegistryKey::Piece { copy, entry } => {
                let coords: Vec<String> = entry.iter().map(|c| c.to_decimal_string()).collect();
                write!(f, "{copy}@({})", coords.join(","))
            }
            RegistryKey::TreeJunction { entry } => {
                let letters: Vec<String> =
                    entry.iter().map(|(l, len)| format!("{l}:{}", len.to_decimal_string())).collect();
                write!(f, "tree@[{}]", letters.join(","))
            }
            RegistryKey::Branch(label) => write!(f, "branch {label}"),
        }
    }
}

/// Positive codes in order of first appearance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CompileRegistry {
    order: Vec<RegistryKey>,
    codes: HashMap<RegistryKey, u64>,
}

fn exact<S: Scalar>(s: &S) -> Result<Rational, CompileError> {
    s.to_rational().ok_or(CompileError::NonRationalCoordinate)
}

fn plane_coords<S: Scalar>(p: &PiecePoint<S>) -> Result<Vec<Rational>, CompileError> {
    p.as_plane().expect("plane step").iter().map(exact).collect()
}

fn tree_letters<S: Scalar>(p: &PiecePoint<S>) -> Result<Vec<(String, Rational)>, CompileError> {
    let word: &TreeWord<S> = p.as_tree().expect("tree step");
    word.letters().iter().map(|(l, len)| Ok((l.clone(), exact(len)?))).collect()
}

fn check_plane(spec: &PlaneSpec) -> Result<(), CompileError> {
    if *spec != PlaneSpec::l1_plane() {
        return Err(CompileError::UnsupportedSpec(*spec));
    }
    Ok(())
}

fn separator_key<S: Scalar>(step: &Step<S>) -> Result<RegistryKey, CompileError> {
    Ok(match step.alpha() {
        Alpha::Tree => RegistryKey::TreeJunction { entry: tree_letters(step.entry())? },
        Alpha::Piece { spec, copy } => {
            check_plane(spec)?;
            RegistryKey::Piece { copy: copy.clone(), entry: plane_coords(step.entry())? }
        }
    })
}

impl CompileRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry covering every label of `descriptors`, in input order.
    pub fn for_descriptors<'a, S: Scalar>(
        descriptors: impl IntoIterator<Item = &'a Descriptor<S>>,
    ) -> Result<Self, CompileError> {
        let mut reg = Self::new();
        for f in descriptors {
            reg.register(f)?;
        }
        Ok(reg)
    }

    pub fn register<S: Scalar>(&mut self, f: &Descriptor<S>) -> Result<(), CompileError> {
        for step in f.steps() {
            self.insert(separator_key(step)?);
            if step.alpha().is_tree() {
                for (label, _) in tree_letters(step.entry())?.into_iter().chain(tree_letters(step.exit())?) {
                    self.insert(RegistryKey::Branch(label));
                }
            }
        }
        Ok(())
    }

    fn insert(&mut self, key: RegistryKey) -> u64 {
        if let Some(&c) = self.codes.get(&key) {
            return c;
        }
        self.order.push(key.clone());
        let code = self.order.len() as u64;
        self.codes.insert(key, code);
        code
    }

    pub fn code(&self, key: &RegistryKey) -> Option<u64> {
        self.codes.get(key).copied()
    }

    fn lookup(&self, key: &RegistryKey) -> Result<i64, CompileError> {
        self.code(key).map(|c| c as i64).ok_or_else(|| CompileError::Unregistered(key.to_string()))
    }

    /// Keys with their codes, in code order.
    pub fn entries(&self) -> impl Iterator<Item = (&RegistryKey, u64)> {
        self.order.iter().zip(1..)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// `round(q·n)`, halves away from zero.
fn scaled(q: &Rational, n: u64) -> Result<i64, CompileError> {
    let v = q * Rational::from_integer(BigInt::from(n));
    v.round().to_integer().to_i64().ok_or(CompileError::Overflow)
}

fn elt(word: &[(String, Rational)], n: u64, reg: &CompileRegistry) -> Result<GroupElement, CompileError> {
    let mut g = GroupElement::identity();
    for (label, len) in word {
        let j = reg.lookup(&RegistryKey::Branch(label.clone()))?;
        g.push(Syllable::A(j, j));
        g.push(Syllable::B(scaled(len, n)?));
        g.push(Syllable::A(-j, -j));
    }
    Ok(g)
}

pub fn compile<S: Scalar>(f: &Descriptor<S>, n: u64, reg: &CompileRegistry) -> Result<GroupElement, CompileError> {
    if n == 0 {
        return Err(CompileError::NonPositiveScale);
    }
    let mut g = GroupElement::identity();
    for step in f.steps() {
        g.push(Syllable::B(reg.lookup(&separator_key(step)?)?));
        let chunk = match step.alpha() {
            Alpha::Piece { .. } => {
                let (x, y) = (plane_coords(step.entry())?, plane_coords(step.exit())?);
                let d0 = scaled(&(&y[0] - &x[0]), n)?;
                let d1 = scaled(&(&y[1] - &x[1]), n)?;
                GroupElement::from_syllables([Syllable::A(d0, d1)])
            }
            Alpha::Tree => {
                let x = elt(&tree_letters(step.entry())?, n, reg)?;
                let y = elt(&tree_letters(step.exit())?, n, reg)?;
                x.inverse().mul(&y)
            }
        };
        g = g.mul(&chunk);
    }
    Ok(g)
}

/// Separator codes plus `2·|U_j| = 4j` for every branch letter met in tree
/// steps. Summed over both descriptors this bounds `dist − n·D`.
pub fn junction_bound<S: Scalar>(f: &Descriptor<S>, reg: &CompileRegistry) -> Result<u64, CompileError> {
    let mut c = 0u64;
    for step in f.steps() {
        c += reg.lookup(&separator_key(step)?)? as u64;
        if step.alpha().is_tree() {
            for (label, _) in tree_letters(step.entry())?.into_iter().chain(tree_letters(step.exit())?) {
                c += 4 * reg.lookup(&RegistryKey::Branch(label))? as u64;
            }
        }
    }
    Ok(c)
}

/// Whether `n·q` is an integer for every coordinate and length of `f`.
pub fn scale_is_aligned<S: Scalar>(f: &Descriptor<S>, n: u64) -> bool {
    let n = BigInt::from(n);
    f.steps().iter().all(|step| {
        step.entry().scalars().into_iter().chain(step.exit().scalars()).all(|s| match s.to_rational() {
            Some(q) => (&n % q.denom()).is_zero(),
            None => false,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conelab::group::group_dist;
    use crate::pieces::PiecePoint;
    use crate::treeprod::dist;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    fn l1(copy: &str) -> Alpha {
        Alpha::piece(PlaneSpec::l1_plane(), copy)
    }

    fn pt(c: &[i64]) -> PiecePoint<Q> {
        PiecePoint::plane_ints(c)
    }

    fn word(label: &str, n: i64) -> PiecePoint<Q> {
        PiecePoint::Tree(TreeWord::single(label, q(n, 1)))
    }

    fn one(parts: Vec<(Alpha, PiecePoint<Q>, PiecePoint<Q>)>) -> Descriptor<Q> {
        Descriptor::from_parts(parts).unwrap()
    }

    #[test]
    fn compile_examples() {
        let f = one(vec![(l1("c0"), pt(&[0, 0]), pt(&[1, 1]))]);
        let reg = CompileRegistry::for_descriptors([&f]).unwrap();
        let expect = GroupElement::from_syllables([Syllable::B(1), Syllable::A(10, 10)]);
        assert_eq!(compile(&f, 10, &reg).unwrap(), expect);
        assert!(compile(&Descriptor::<Q>::empty(), 7, &reg).unwrap().is_identity());

        let t = one(vec![(Alpha::Tree, PiecePoint::root(), word("A", 2))]);
        let reg = CompileRegistry::for_descriptors([&t]).unwrap();
        let j = reg.code(&RegistryKey::Branch("A".into())).unwrap() as i64;
        let c = reg.code(&RegistryKey::TreeJunction { entry: vec![] }).unwrap() as i64;
        let expect = GroupElement::from_syllables([
            Syllable::B(c),
            Syllable::A(j, j),
            Syllable::B(10),
            Syllable::A(-j, -j),
        ]);
        assert_eq!(compile(&t, 5, &reg).unwrap(), expect);
    }

    #[test]
    fn rejects_other_planes() {
        let spec = PlaneSpec::new(3, crate::pieces::Norm::L1);
        let f = one(vec![(Alpha::piece(spec, "c"), pt(&[0, 0, 0]), pt(&[1, 0, 0]))]);
        assert_eq!(CompileRegistry::for_descriptors([&f]), Err(CompileError::UnsupportedSpec(spec)));
    }

    #[test]
    fn hand_reduced_distances() {
        let f = one(vec![(l1("c0"), pt(&[0, 0]), pt(&[1, 1]))]);
        let g = one(vec![(l1("c0"), pt(&[0, 0]), pt(&[2, 0]))]);
        let g1 = one(vec![(l1("c1"), pt(&[0, 0]), pt(&[2, 0]))]);
        let reg = CompileRegistry::for_descriptors([&f, &g, &g1]).unwrap();
        assert_eq!(dist(&f, &g), q(2, 1));
        assert_eq!(dist(&f, &g1), q(4, 1));
        for n in [1, 2, 16, 1024] {
            let (cf, cg, cg1) = (compile(&f, n, &reg).unwrap(), compile(&g, n, &reg).unwrap(), compile(&g1, n, &reg).unwrap());
            assert_eq!(group_dist(&cf, &cg), 2 * n);
            // separators t^1 and t^2 leave t^1 at the junction
            assert_eq!(group_dist(&cf, &cg1), 4 * n + 1);
        }
        let a = one(vec![(Alpha::Tree, PiecePoint::root(), word("A", 1))]);
        let b = one(vec![(Alpha::Tree, PiecePoint::root(), word("B", 1))]);
        let reg = CompileRegistry::for_descriptors([&a, &b]).unwrap();
        let bound = junction_bound(&a, &reg).unwrap() + junction_bound(&b, &reg).unwrap();
        for n in [4, 64, 4096] {
            let d = group_dist(&compile(&a, n, &reg).unwrap(), &compile(&b, n, &reg).unwrap());
            assert!(d >= 2 * n && d <= 2 * n + bound, "n={n} d={d}");
        }
    }

    #[test]
    fn entries_with_different_starts_get_distinct_separators() {
        let f = one(vec![(Alpha::Tree, word("A", 1), PiecePoint::Tree(TreeWord::reduced([("A".into(), q(1, 1)), ("B".into(), q(1, 1))])))]);
        let g = one(vec![(Alpha::Tree, PiecePoint::root(), word("C", 1))]);
        assert_eq!(dist(&f, &g), q(2, 1));
        let reg = CompileRegistry::for_descriptors([&f, &g]).unwrap();
        let c = junction_bound(&f, &reg).unwrap() + junction_bound(&g, &reg).unwrap();
        for n in [16, 256] {
            let d = group_dist(&compile(&f, n, &reg).unwrap(), &compile(&g, n, &reg).unwrap());
            assert!(2 * n <= d && d <= 2 * n + c, "n={n} d={d} c={c}");
        }
    }

    #[test]
    fn alignment() {
        let f = one(vec![(l1("c"), pt(&[0, 0]), PiecePoint::plane([q(1, 4), q(3, 8)]))]);
        assert!(scale_is_aligned(&f, 16));
        assert!(scale_is_aligned(&f, 8));
        assert!(!scale_is_aligned(&f, 4));
    }
}
