//! Integer polynomials and Sturm-sequence real-root counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{denominator_lcm, Rational};

/// Dense univariate polynomial over arbitrary-precision integers, constant
/// term first. Trailing zeros are trimmed; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// Monic linear factor `t − r` scaled to integers: `q·t − p` for `r = p/q`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + Rational::from_integer(c.clone()))
    }

    /// Sign of `p(t)`, computed without forming the rational value's denominator.
    fn sign_at(&self, t: &Rational) -> i8 {
        // q^deg · p(p/q) = Σ c_k p^k q^(deg−k), an integer with the same sign.
        if self.is_zero() {
            return 0;
        }
        let (p, q) = (t.numer(), t.denom());
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        sign_of(&acc)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    /// `t^deg · p(1/t)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; signs are preserved.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    fn to_rational(&self) -> Vec<Rational> {
        self.coeffs.iter().cloned().map(Rational::from_integer).collect()
    }

    /// Quotient and remainder over the rationals.
    fn div_rem_rational(&self, divisor: &Self) -> (Vec<Rational>, Vec<Rational>) {
        let dlead = Rational::from_integer(divisor.leading().expect("nonzero divisor").clone());
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.to_rational();
        if rem.len() <= dd {
            return (Vec::new(), rem);
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone() / dlead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= c.clone() * Rational::from_integer(dc.clone());
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (quot, rem)
    }

    /// Remainder of `self` by `divisor`, scaled by the smallest positive
    /// rational that makes it a primitive integer polynomial. Signs are kept.
    pub fn scaled_rem(&self, divisor: &Self) -> Self {
        scale_to_primitive(&self.div_rem_rational(divisor).1)
    }

    /// Exact quotient by a divisor, scaled positively to a primitive integer polynomial.
    pub fn scaled_quotient(&self, divisor: &Self) -> Self {
        scale_to_primitive(&self.div_rem_rational(divisor).0)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.is_zero() {
            return normalize_sign(b);
        }
        while !b.is_zero() {
            let r = a.scaled_rem(&b);
            a = b;
            b = r;
        }
        normalize_sign(a)
    }

    /// `p / gcd(p, p′)`: same distinct real roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        self.scaled_quotient(&g)
    }
}

fn normalize_sign(p: IntPoly) -> IntPoly {
    if p.leading().is_some_and(Signed::is_negative) {
        p.scale(&BigInt::from(-1))
    } else {
        p
    }
}

fn scale_to_primitive(values: &[Rational]) -> IntPoly {
    let l = denominator_lcm(values);
    IntPoly::new(values.iter().map(|v| v.numer() * (&l / v.denom())).collect()).primitive()
}

fn sign_of(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Sturm chain `p₀, p₁, …, p_m` of integer polynomials, each a positive
/// multiple of the classical signed remainder sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct SturmChain {
    polys: Vec<IntPoly>,
}

impl SturmChain {
    pub fn polys(&self) -> &[IntPoly] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn variations_at(&self, t: &Rational) -> usize {
        variations(self.polys.iter().map(|p| p.sign_at(t)))
    }

    /// Sign variations at `+∞` (`positive = true`) or `−∞`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        variations(self.polys.iter().map(|p| {
            let lead = sign_of(p.leading().expect("chain members are nonzero"));
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -lead
            } else {
                lead
            }
        }))
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut prev = 0i8;
    for s in signs.filter(|&s| s != 0) {
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Sturm chain of `p` itself: `p`, `p′`, then negated remainders with
/// content removed, until the remainder vanishes.
pub fn sturm_chain(p: &IntPoly) -> Result<SturmChain> {
    if p.is_zero() {
        return Err(Error::InvalidInput("Sturm chain of the zero polynomial".into()));
    }
    let mut polys = vec![p.clone()];
    let d = p.derivative().primitive();
    if !d.is_zero() {
        polys.push(d);
    }
    while polys.len() >= 2 {
        let k = polys.len();
        let r = polys[k - 2].scaled_rem(&polys[k - 1]);
        if r.is_zero() {
            break;
        }
        polys.push(r.scale(&BigInt::from(-1)));
    }
    Ok(SturmChain { polys })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Interval {
    Real,
    Closed(Rational, Rational),
}

/// Number of distinct real roots of `p` in the interval. Inputs are reduced
/// to their squarefree part first.
pub fn count_real_roots(p: &IntPoly, interval: &Interval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "the zero polynomial has infinitely many roots".into(),
        ));
    }
    let chain = sturm_chain(&p.squarefree_part())?;
    match interval {
        Interval::Real => Ok(chain
            .variations_at_infinity(false)
            .saturating_sub(chain.variations_at_infinity(true))),
        Interval::Closed(a, b) => {
            if a >= b {
                return Err(Error::InvalidInput(format!(
                    "interval endpoints must satisfy a < b (got {a} and {b})"
                )));
            }
            for e in [a, b] {
                if p.eval(e).is_zero() {
                    return Err(Error::RootAtEndpoint(e.to_string()));
                }
            }
            Ok(chain.variations_at(a).saturating_sub(chain.variations_at(b)))
        }
    }
}

/// Homogeneous-style bivariate polynomial in `(x₃₄, x₄₄)` with integer
/// coefficients, stored as `(e34, e44, coefficient)` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariatePoly {
    terms: Vec<(u32, u32, BigInt)>,
}

impl BivariatePoly {
    /// Merges duplicate exponent pairs and drops zero coefficients. Terms are
    /// kept in descending order of the `x₄₄` exponent.
    pub fn new(terms: impl IntoIterator<Item = (u32, u32, BigInt)>) -> Self {
        let mut merged: std::collections::BTreeMap<(u32, u32), BigInt> = Default::default();
        for (e34, e44, c) in terms {
            *merged.entry((e44, e34)).or_default() += c;
        }
        let terms = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|((e44, e34), c)| (e34, e44, c))
            .collect();
        BivariatePoly { terms }
    }

    pub fn terms(&self) -> &[(u32, u32, BigInt)] {
        &self.terms
    }

    pub fn coefficient(&self, e34: u32, e44: u32) -> BigInt {
        self.terms
            .iter()
            .find(|(a, b, _)| *a == e34 && *b == e44)
            .map(|(_, _, c)| c.clone())
            .unwrap_or_default()
    }

    /// Every term has total degree `deg` (vacuously true for zero).
    pub fn is_homogeneous(&self, deg: u32) -> bool {
        self.terms.iter().all(|(a, b, _)| a + b == deg)
    }

    /// `f(1, t)`: coefficient of `t^k` sums the terms with `x₄₄` exponent `k`.
    pub fn specialize_x34_one(&self) -> IntPoly {
        self.collect_by(|(_, e44)| e44)
    }

    /// `f(t, 1)`: coefficient of `t^k` sums the terms with `x₃₄` exponent `k`.
    pub fn specialize_x44_one(&self) -> IntPoly {
        self.collect_by(|(e34, _)| e34)
    }

    fn collect_by(&self, key: impl Fn((u32, u32)) -> u32) -> IntPoly {
        let top = self.terms.iter().map(|(a, b, _)| key((*a, *b))).max();
        let Some(top) = top else { return IntPoly::zero() };
        let mut coeffs = vec![BigInt::zero(); top as usize + 1];
        for (a, b, c) in &self.terms {
            coeffs[key((*a, *b)) as usize] += c;
        }
        IntPoly::new(coeffs)
    }

    /// Text form: one `e34 e44 coefficient` term per line.
    pub fn to_text(&self) -> String {
        self.terms.iter().map(|(a, b, c)| format!("{a} {b} {c}\n")).collect()
    }

    /// Parses the text form. Blank lines and `#` comments are skipped.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let at = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
            if fields.len() != 3 {
                return Err(at(&format!(
                    "expected `e34 e44 coefficient`, found {} fields",
                    fields.len()
                )));
            }
            let e34: u32 = fields[0].parse().map_err(|_| at("field 1 (e34) is not an exponent"))?;
            let e44: u32 = fields[1].parse().map_err(|_| at("field 2 (e44) is not an exponent"))?;
            let c: BigInt = fields[2]
                .trim_start_matches('+')
                .parse()
                .map_err(|_| at("field 3 (coefficient) is not an integer"))?;
            if !seen.insert((e34, e44)) {
                return Err(at(&format!("duplicate exponent pair ({e34}, {e44})")));
            }
            terms.push((e34, e44, c));
        }
        Ok(Self::new(terms))
    }
}

/// The eleven printed coefficients of `f₀ ∈ Q[x₃₄, x₄₄]` as `(e34, e44, coefficient)`.
const F0_TERMS: [(u32, u32, &str); 11] = [
    (0, 10, "615836814694440125755941750205355957259806055430532973956877900"),
    (1, 9, "-884972594452387958848562473144241797030697764519228205098183524"),
    (
        2,
        8,
        "37549510562762689603032479610577980614684970115180508761212602923",
    ),
    (
        3,
        7,
        "-261784289245252068342511157673868998003077035922935758454568869970",
    ),
    (
        4,
        6,
        "1318646361014374203805595493716801537462083922918839965435901151518",
    ),
    (
        5,
        5,
        "2323672503729013471271218611541822606087314313103855222266887257194",
    ),
    (
        6,
        4,
        "841099655929202539990506870648349938942927420225588274968467286492",
    ),
    (
        7,
        3,
        "2453118466138743624272476494499733256382267234695398509857315458204",
    ),
    (
        8,
        2,
        "2686702635361560203562012680667911834582476444588124478311966009776",
    ),
    (
        9,
        1,
        "59872475066978406270800582425071592403273130463063552339405262912",
    ),
    (
        10,
        0,
        "950484050032900617743793729374383632917614227356173754905368787200",
    ),
];

/// The degree-10 homogeneous eliminant `f₀` of the six-hyperplane system in `R⁴`.
pub fn f0_dataset() -> BivariatePoly {
    BivariatePoly::new(
        F0_TERMS
            .iter()
            .map(|(a, b, c)| (*a, *b, c.parse::<BigInt>().expect("embedded coefficient is an integer"))),
    )
}
