//! Integer Laurent polynomials, the type-K test for `Λ/(p)`, and the
//! homology of the complex `P` built from `p` with one cell in each
//! dimension 0 through 3.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlexanderError;
use crate::linalg::{invariant_factors, AbelianInvariants, IntMatrix};

/// Element of `Λ = Z[t, t⁻¹]`, stored as exponent ↦ nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c.into());
        p
    }

    /// `coeffs[i]` is the coefficient of `t^(low + i)`.
    pub fn from_coefficients(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(low + i as i64, c.into());
        }
        p
    }

    fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn lowest_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn highest_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `t^k · p`
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Sum of the coefficients.
    pub fn evaluate_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// True for `±t^k`, the units of `Λ`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ascending exponents: `t^-1 - 1 + t`, `-2 + 3t^2`, `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{mag}{power}")?;
            }
        }
        Ok(())
    }
}

struct PolyParser<'a> {
    text: &'a str,
    at: usize,
}

impl PolyParser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.at += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.at..].chars().next()
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.at += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_minus(&mut self) -> bool {
        self.eat('-') || self.eat('−')
    }

    fn error(&self, message: impl Into<String>) -> AlexanderError {
        AlexanderError::Parse {
            offset: self.at,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.at;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.at += 1;
        }
        (self.at > start).then(|| self.text[start..self.at].parse().expect("digits"))
    }

    fn exponent(&mut self) -> Result<i64, AlexanderError> {
        let paren = self.eat('(');
        let neg = self.eat_minus();
        let k = self.integer().ok_or_else(|| self.error("expected an exponent"))?;
        if paren && !self.eat(')') {
            return Err(self.error("expected ')'"));
        }
        let k = i64::try_from(&k).map_err(|_| self.error("exponent too large"))?;
        Ok(if neg { -k } else { k })
    }

    /// `[int] ["*"] ["t" ["^" exponent]]`, at least one part present.
    fn term(&mut self) -> Result<(BigInt, i64), AlexanderError> {
        let coeff = self.integer();
        let star = coeff.is_some() && self.eat('*');
        let has_t = self.eat('t');
        if star && !has_t {
            return Err(self.error("expected 't' after '*'"));
        }
        if coeff.is_none() && !has_t {
            return Err(self.error("expected a term"));
        }
        let k = if has_t {
            if self.eat('^') {
                self.exponent()?
            } else {
                1
            }
        } else {
            0
        };
        Ok((coeff.unwrap_or_else(BigInt::one), k))
    }

    fn poly(&mut self) -> Result<LaurentPoly, AlexanderError> {
        let mut p = LaurentPoly::zero();
        let mut neg = self.eat_minus();
        loop {
            let (c, k) = self.term()?;
            p.add_term(k, if neg { -c } else { c });
            if self.eat('+') {
                neg = false;
            } else if self.eat_minus() {
                neg = true;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.at != self.text.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(p)
    }
}

impl FromStr for LaurentPoly {
    type Err = AlexanderError;

    fn from_str(s: &str) -> Result<Self, AlexanderError> {
        PolyParser { text: s, at: 0 }.poly()
    }
}

/// Why `Λ/(p)` is or is not of type K.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeKCertificate {
    pub polynomial: String,
    /// `p(1)`, as a decimal string.
    pub value_at_one: String,
    /// `t - 1` acts invertibly on `Λ/(p)`, which happens exactly when
    /// `|p(1)| = 1` since `Λ/(p, t - 1) = Z/p(1)`.
    pub type_k: bool,
    /// Sign of `p(1)` when `|p(1)| = 1`.
    pub sign: Option<i8>,
}

pub fn is_type_k_cyclic(p: &LaurentPoly) -> Result<TypeKCertificate, AlexanderError> {
    if p.is_zero() {
        return Err(AlexanderError::ZeroPolynomial);
    }
    let v = p.evaluate_at_one();
    let sign = if v.is_one() {
        Some(1)
    } else if (-&v).is_one() {
        Some(-1)
    } else {
        None
    };
    Ok(TypeKCertificate {
        polynomial: p.to_string(),
        value_at_one: v.to_string(),
        type_k: sign.is_some(),
        sign,
    })
}

/// Cyclic Λ-module descriptions used for the homology of the cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaModule {
    Zero,
    /// `Λ/(t - 1)`: Z with t acting trivially.
    TrivialZ,
    /// `Λ/(relator)`.
    Cyclic { relator: String },
}

impl LambdaModule {
    /// Cokernel and kernel of `t - 1` acting on the module.
    fn t_minus_one(&self, p: &LaurentPoly) -> (AbelianInvariants, AbelianInvariants) {
        match self {
            LambdaModule::Zero => (AbelianInvariants::trivial(), AbelianInvariants::trivial()),
            LambdaModule::TrivialZ => (AbelianInvariants::free(1), AbelianInvariants::free(1)),
            LambdaModule::Cyclic { .. } => {
                // Λ/(p, t - 1) = Z/p(1); a class q is killed by t - 1 iff
                // (t - 1) q ∈ (p), which has nonzero solutions only if (t - 1) | p
                let v = p.evaluate_at_one();
                let coker = AbelianInvariants::from_elementary(0, &[v.abs()]);
                let ker = if v.is_zero() {
                    AbelianInvariants::free(1)
                } else {
                    AbelianInvariants::trivial()
                };
                (coker, ker)
            }
        }
    }
}

impl fmt::Display for LambdaModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaModule::Zero => f.write_str("0"),
            LambdaModule::TrivialZ => f.write_str("Z"),
            LambdaModule::Cyclic { relator } => write!(f, "Λ/({relator})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PComplexReport {
    pub polynomial: String,
    pub value_at_one: String,
    /// `H_i(P̃)` for i = 0..=3 as Λ-modules.
    pub cover: Vec<LambdaModule>,
    /// `H_i(P)` for i = 0..=3 from the cellular chain complex.
    pub quotient: Vec<AbelianInvariants>,
    /// `coker(t - 1 | H_i(P̃)) ⊕ ker(t - 1 | H_{i-1}(P̃))` for i = 0..=3.
    pub milnor_prediction: Vec<AbelianInvariants>,
    pub milnor_consistent: bool,
    pub type_k: bool,
    /// `H_*(P) = H_*(S¹)`.
    pub homology_circle: bool,
}

/// Homology of `C_3 → C_2 → C_1 → C_0` given the matrices of `∂_1, ∂_2,
/// ∂_3` in row convention.
fn chain_homology(ranks: [usize; 4], boundaries: [&IntMatrix; 3]) -> Vec<AbelianInvariants> {
    let factors: Vec<Vec<BigInt>> = boundaries.iter().map(|m| invariant_factors(m)).collect();
    (0..4)
        .map(|i| {
            let out_rank = if i == 0 { 0 } else { factors[i - 1].len() };
            let incoming: &[BigInt] = if i == 3 { &[] } else { &factors[i] };
            AbelianInvariants::from_invariant_factors(ranks[i] - out_rank, incoming)
        })
        .collect()
}

pub fn p_complex_homology(p: &LaurentPoly) -> Result<PComplexReport, AlexanderError> {
    let cert = is_type_k_cyclic(p)?;
    let v = p.evaluate_at_one();
    let h2_cover = if p.is_unit() {
        LambdaModule::Zero
    } else {
        LambdaModule::Cyclic { relator: p.to_string() }
    };
    let cover = vec![LambdaModule::TrivialZ, LambdaModule::Zero, h2_cover, LambdaModule::Zero];

    // one cell per dimension; t ↦ 1 turns ∂₁ = t - 1 into 0 and ∂₃ = p into p(1)
    let zero = IntMatrix::zeros(1, 1);
    let d3 = IntMatrix::from_rows(&[vec![v.clone()]]);
    let quotient = chain_homology([1, 1, 1, 1], [&zero, &zero, &d3]);

    // each Milnor short exact sequence splits because every kernel is free
    let parts: Vec<_> = cover.iter().map(|m| m.t_minus_one(p)).collect();
    let milnor_prediction: Vec<AbelianInvariants> = (0..4)
        .map(|i| {
            let coker = &parts[i].0;
            if i == 0 {
                coker.clone()
            } else {
                coker.direct_sum(&parts[i - 1].1)
            }
        })
        .collect();
    let acyclic_above_one = quotient[2].is_trivial() && quotient[3].is_trivial();
    let milnor_consistent = milnor_prediction == quotient && acyclic_above_one == cert.type_k;
    let circle = [1, 1, 0, 0].map(AbelianInvariants::free);
    Ok(PComplexReport {
        polynomial: cert.polynomial,
        value_at_one: cert.value_at_one,
        homology_circle: quotient == circle,
        cover,
        quotient,
        milnor_prediction,
        milnor_consistent,
        type_k: cert.type_k,
    })
}
