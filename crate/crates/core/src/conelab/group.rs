//! The free product `Z² * Z = <a, b | [a, b]> * <t>` in syllable normal form.

use std::fmt;
use std::str::FromStr;

/// One factor element: `A(m, k) = a^m b^k` or `B(t) = t^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Syllable {
    A(i64, i64),
    B(i64),
}

impl Syllable {
    pub fn is_zero(&self) -> bool {
        matches!(self, Syllable::A(0, 0) | Syllable::B(0))
    }

    pub fn inverse(&self) -> Self {
        match *self {
            Syllable::A(m, k) => Syllable::A(-m, -k),
            Syllable::B(t) => Syllable::B(-t),
        }
    }

    /// Length in the factor's standard generators.
    pub fn length(&self) -> u64 {
        match *self {
            Syllable::A(m, k) => m.unsigned_abs() + k.unsigned_abs(),
            Syllable::B(t) => t.unsigned_abs(),
        }
    }

    fn merge(&self, other: &Self) -> Option<Self> {
        match (*self, *other) {
            (Syllable::A(m, k), Syllable::A(m2, k2)) => Some(Syllable::A(m + m2, k + k2)),
            (Syllable::B(t), Syllable::B(t2)) => Some(Syllable::B(t + t2)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    B,
    T,
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub inverse: bool,
}

impl Letter {
    pub const ALL: [Letter; 6] = [
        Letter { generator: Generator::A, inverse: false },
        Letter { generator: Generator::A, inverse: true },
        Letter { generator: Generator::B, inverse: false },
        Letter { generator: Generator::B, inverse: true },
        Letter { generator: Generator::T, inverse: false },
        Letter { generator: Generator::T, inverse: true },
    ];

    pub fn syllable(&self) -> Syllable {
        let e = if self.inverse { -1 } else { 1 };
        match self.generator {
            Generator::A => Syllable::A(e, 0),
            Generator::B => Syllable::A(0, e),
            Generator::T => Syllable::B(e),
        }
    }
}

/// An element in normal form: nonzero syllables alternating between the
/// two factors.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    syllables: Vec<Syllable>,
}

impl GroupElement {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = Syllable>) -> Self {
        let mut g = Self::identity();
        for s in syllables {
            g.push(s);
        }
        g
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Right multiplication by one syllable, keeping the normal form.
    pub fn push(&mut self, s: Syllable) {
        if s.is_zero() {
            return;
        }
        match self.syllables.last().and_then(|last| last.merge(&s)) {
            Some(m) if m.is_zero() => {
                self.syllables.pop();
            }
            Some(m) => *self.syllables.last_mut().expect("merged with the last syllable") = m,
            None => self.syllables.push(s),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut g = self.clone();
        for s in &other.syllables {
            g.push(*s);
        }
        g
    }

    pub fn inverse(&self) -> Self {
        GroupElement { syllables: self.syllables.iter().rev().map(Syllable::inverse).collect() }
    }

    /// Word length for the generators `a, b, t`: the sum of syllable lengths.
    pub fn word_length(&self) -> u64 {
        self.syllables.iter().map(Syllable::length).sum()
    }
}

pub fn normal_form(word: &[Letter]) -> GroupElement {
    GroupElement::from_syllables(word.iter().map(Letter::syllable))
}

pub fn group_dist(g: &GroupElement, h: &GroupElement) -> u64 {
    g.inverse().mul(h).word_length()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse word at byte {position}: {reason}")]
pub struct WordParseError {
    pub position: usize,
    pub reason: &'static str,
}

fn superscript_digit(c: char) -> Option<u32> {
    match c {
        '⁰' => Some(0),
        '¹' => Some(1),
        '²' => Some(2),
        '³' => Some(3),
        '⁴'..='⁹' => Some(c as u32 - '⁴' as u32 + 4),
        _ => None,
    }
}

/// Parses words such as `a t a^-1 b`, `a³ b⁻² t⁵ a` or `aBt` (upper case
/// letters are inverses). `1` and the empty string denote the identity.
pub fn parse_word(input: &str) -> Result<Vec<Letter>, WordParseError> {
    let powers = parse_powers(input)?;
    Ok(powers
        .into_iter()
        .flat_map(|(letter, e)| std::iter::repeat_n(letter, e as usize))
        .collect())
}

/// Letters with positive exponents.
fn parse_powers(input: &str) -> Result<Vec<(Letter, u64)>, WordParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        if c.is_whitespace() || c == '·' || c == '*' {
            continue;
        }
        if c == '1' && out.is_empty() {
            continue;
        }
        let (generator, mut inverse) = match c {
            'a' => (Generator::A, false),
            'b' => (Generator::B, false),
            't' => (Generator::T, false),
            'A' => (Generator::A, true),
            'B' => (Generator::B, true),
            'T' => (Generator::T, true),
            _ => return Err(WordParseError { position: pos, reason: "unknown letter" }),
        };
        let mut exponent: i64 = 1;
        match chars.peek().map(|&(_, c)| c) {
            Some('^') => {
                chars.next();
                let mut text = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() || (text.is_empty() && (d == '-' || d == '+')) {
                        text.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                exponent = text.parse().map_err(|_| WordParseError { position: pos, reason: "bad exponent" })?;
            }
            Some(d) if d == '⁻' || superscript_digit(d).is_some() => {
                let mut negative = false;
                let mut value: i64 = 0;
                let mut digits = 0;
                while let Some(&(_, d)) = chars.peek() {
                    if d == '⁻' && digits == 0 && !negative {
                        negative = true;
                    } else if let Some(v) = superscript_digit(d) {
                        value = value * 10 + v as i64;
                        digits += 1;
                    } else {
                        break;
                    }
                    chars.next();
                }
                if digits == 0 {
                    return Err(WordParseError { position: pos, reason: "bad exponent" });
                }
                exponent = if negative { -value } else { value };
            }
            _ => {}
        }
        if exponent < 0 {
            inverse = !inverse;
        }
        out.push((Letter { generator, inverse }, exponent.unsigned_abs()));
    }
    Ok(out)
}

fn write_power(f: &mut fmt::Formatter<'_>, letter: char, e: i64) -> fmt::Result {
    match e {
        1 => write!(f, "{letter}"),
        _ => write!(f, "{letter}^{e}"),
    }
}

/// `a^3 b^-2 t^5 a`, or `1` for the identity.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !std::mem::replace(&mut first, false) {
                f.write_str(" ")?;
            }
            Ok(())
        };
        for s in &self.syllables {
            match *s {
                Syllable::A(m, k) => {
                    if m != 0 {
                        sep(f)?;
                        write_power(f, 'a', m)?;
                    }
                    if k != 0 {
                        sep(f)?;
                        write_power(f, 'b', k)?;
                    }
                }
                Syllable::B(t) => {
                    sep(f)?;
                    write_power(f, 't', t)?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for GroupElement {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let powers = parse_powers(s)?;
        Ok(GroupElement::from_syllables(powers.into_iter().map(|(letter, e)| {
            let e = e as i64;
            match letter.syllable() {
                Syllable::A(m, k) => Syllable::A(m * e, k * e),
                Syllable::B(t) => Syllable::B(t * e),
            }
        })))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(s: &str) -> GroupElement {
        s.parse().unwrap()
    }

    /// Free reduction one adjacent pair at a time, independent of `push`.
    fn stepwise(word: &[Letter]) -> Vec<Syllable> {
        let mut v: Vec<Syllable> = word.iter().map(Letter::syllable).collect();
        loop {
            v.retain(|s| !s.is_zero());
            let Some(i) = (1..v.len()).find(|&i| v[i - 1].merge(&v[i]).is_some()) else {
                return v;
            };
            v[i - 1] = v[i - 1].merge(&v[i]).unwrap();
            v.remove(i);
        }
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(g("a t a^-1 a t^-1 b").syllables(), &[Syllable::A(1, 1)]);
        assert_eq!(g(""), GroupElement::identity());
        assert_eq!(
            g("a³ b⁻² t⁵ a").syllables(),
            &[Syllable::A(3, -2), Syllable::B(5), Syllable::A(1, 0)]
        );
        assert_eq!(g("aBt"), g("a b^-1 t"));
    }

    #[test]
    fn word_length_examples() {
        assert_eq!(g("a^3 b^-2 t^5 a").word_length(), 11);
        assert_eq!(GroupElement::identity().word_length(), 0);
    }

    #[test]
    fn group_dist_examples() {
        for n in 1..=6i64 {
            let x = GroupElement::from_syllables([Syllable::A(n, n)]);
            assert_eq!(group_dist(&x, &x), 0);
            assert_eq!(group_dist(&GroupElement::identity(), &x), 2 * n as u64);
            let y = GroupElement::from_syllables([Syllable::B(1), Syllable::A(2 * n, 0)]);
            assert_eq!(group_dist(&x, &y), 4 * n as u64 + 1);
        }
    }

    #[test]
    fn display_round_trip() {
        for s in ["1", "a", "a^3 b^-2 t^5 a", "b^-1 t^-7", "t a^2 b^3 t^-1"] {
            assert_eq!(g(s).to_string(), s);
            assert_eq!(g(&g(s).to_string()), g(s));
        }
        assert!("a x".parse::<GroupElement>().is_err());
        assert!("a^".parse::<GroupElement>().is_err());
    }

    fn letters() -> impl Strategy<Value = Vec<Letter>> {
        proptest::collection::vec(proptest::sample::select(Letter::ALL.to_vec()), 0..40)
    }

    proptest! {
        #[test]
        fn push_matches_stepwise_reduction(w in letters()) {
            prop_assert_eq!(normal_form(&w).syllables().to_vec(), stepwise(&w));
        }

        #[test]
        fn group_laws(x in letters(), y in letters(), z in letters()) {
            let (x, y, z) = (normal_form(&x), normal_form(&y), normal_form(&z));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert!(x.mul(&x.inverse()).is_identity());
            prop_assert_eq!(group_dist(&x, &y), group_dist(&y, &x));
            prop_assert!(group_dist(&x, &z) <= group_dist(&x, &y) + group_dist(&y, &z));
        }
    }
}
