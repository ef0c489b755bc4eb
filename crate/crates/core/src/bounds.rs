//! Closed-form bound and exponent evaluators. Exponents are exact rationals;
//! counting bounds use exact big-integer binomials; envelope values are
//! 64-bit floats and always constant-free (asymptotic constants are never
//! asserted).

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rat = Ratio<i64>;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("domain violation: {0}")]
    Domain(String),
}

/// Renders a rational as "p/q" (or "p" for integers), the form used in JSON
/// artifacts.
pub fn rational_string(r: Rat) -> String {
    if r.denom() == &1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rat, BoundsError> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| BoundsError::Domain(format!("cannot parse rational '{s}'")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d == 0 {
                return Err(BoundsError::Domain("zero denominator".into()));
            }
            Ok(Ratio::new(parse_int(num)?, d))
        }
        None => Ok(Ratio::from_integer(parse_int(s)?)),
    }
}

fn log2(x: u64) -> f64 {
    (x as f64).log2()
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Theorem1Flags {
    /// a >= 2^12 (log2 n)^3, the degree condition of the construction.
    pub a_large_enough: bool,
    pub n_ge_m: bool,
    pub b_ge_a: bool,
    /// log2 n is positive (n >= 2); the values are zeroed otherwise.
    pub log_positive: bool,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Theorem1Values {
    pub m: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
    /// t = 2^8 n (log2 n)^2 / (a b)
    pub t: f64,
    /// b t / log2 n, the constant-free lower-bound envelope for r(F, t).
    pub lower_bound: f64,
    pub flags: Theorem1Flags,
}

pub fn theorem1_values(m: u64, n: u64, a: u64, b: u64) -> Theorem1Values {
    let log_positive = n >= 2;
    let (t, lower_bound) = if log_positive {
        let ln = log2(n);
        let t = 256.0 * n as f64 * ln * ln / (a as f64 * b as f64);
        (t, b as f64 * t / ln)
    } else {
        (0.0, 0.0)
    };
    Theorem1Values {
        m,
        n,
        a,
        b,
        t,
        lower_bound,
        flags: Theorem1Flags {
            a_large_enough: log_positive && (a as f64) >= 4096.0 * log2(n).powi(3),
            n_ge_m: n >= m,
            b_ge_a: b >= a,
            log_positive,
        },
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExponentFlags {
    /// 0 < beta <= (l+1)/(2l+1)
    pub beta_in_range: bool,
    pub alpha_ge_one: bool,
    /// Both denominators (alpha - 3 beta - alpha beta + 2 and
    /// alpha beta - beta + 1) are positive; no exponent is asserted
    /// otherwise.
    pub denominators_positive: bool,
}

/// Exact-rational exponents of the odd-cycle lower bound
/// t^{(ab-3b+2)/(a-3b-ab+2)} / (log t)^{(3ab-a-3b+2)/(a-3b-ab+2)}
/// (a = alpha, b = beta), together with the intermediate exponents of n.
#[derive(Clone, Copy, Debug)]
pub struct ExponentReport {
    pub l: u32,
    pub alpha: Rat,
    pub beta: Rat,
    pub t_exponent: Option<Rat>,
    pub log_exponent: Option<Rat>,
    /// m = Theta(n^{(alpha+beta-alpha beta)/(alpha beta - beta + 1)})
    pub m_exponent_of_n: Option<Rat>,
    /// t = Theta(n^{(alpha-3beta-alpha beta+2)/(alpha beta - beta + 1)} log^2 n)
    pub t_exponent_of_n: Option<Rat>,
    pub flags: ExponentFlags,
}

impl ExponentReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        let rs = |o: Option<Rat>| match o {
            Some(r) => serde_json::Value::String(rational_string(r)),
            None => serde_json::Value::Null,
        };
        serde_json::json!({
            "l": self.l,
            "alpha": rational_string(self.alpha),
            "beta": rational_string(self.beta),
            "t_exponent": rs(self.t_exponent),
            "log_exponent": rs(self.log_exponent),
            "m_exponent_of_n": rs(self.m_exponent_of_n),
            "t_exponent_of_n": rs(self.t_exponent_of_n),
            "flags": serde_json::json!({
                "beta_in_range": self.flags.beta_in_range,
                "alpha_ge_one": self.flags.alpha_ge_one,
                "denominators_positive": self.flags.denominators_positive,
            }),
        })
    }
}

pub fn theorem3_exponents(l: u32, alpha: Rat, beta: Rat) -> ExponentReport {
    let one = Rat::from_integer(1);
    let two = Rat::from_integer(2);
    let three = Rat::from_integer(3);
    let ab = alpha * beta;
    let t_num = ab - three * beta + two;
    let denom = alpha - three * beta - ab + two;
    let log_num = three * ab - alpha - three * beta + two;
    let n_denom = ab - beta + one;
    let flags = ExponentFlags {
        beta_in_range: beta > Rat::zero() && beta <= Ratio::new(l as i64 + 1, 2 * l as i64 + 1),
        alpha_ge_one: alpha >= one,
        denominators_positive: denom > Rat::zero() && n_denom > Rat::zero(),
    };
    let value = |num: Rat, den: Rat| {
        if flags.denominators_positive {
            Some(num / den)
        } else {
            None
        }
    };
    ExponentReport {
        l,
        alpha,
        beta,
        t_exponent: value(t_num, denom),
        log_exponent: value(log_num, denom),
        m_exponent_of_n: value(alpha + beta - ab, n_denom),
        t_exponent_of_n: value(denom, n_denom),
        flags,
    }
}

/// The conditional exponent (alpha(l+1) + l - 1)/(alpha l + l - 1); tends to
/// (l+1)/l as alpha grows. For alpha = p/q this is
/// ((l+1)p + (l-1)q) / (lp + (l-1)q), whose gcd equals gcd(p, (l-1)q)
/// (subtract the terms), so million-step grids reduce in a few mod steps.
pub fn conjecture_exponent(l: u32, alpha: Rat) -> Rat {
    let l = l as i64;
    let (p, q) = (*alpha.numer(), *alpha.denom());
    let num = (l + 1) * p + (l - 1) * q;
    let den = l * p + (l - 1) * q;
    if p > 0 {
        let g = gcd_i64(p, (l - 1) * q);
        Ratio::new_raw(num / g, den / g)
    } else {
        Ratio::new(num, den)
    }
}

fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs().max(1)
}

pub fn conjecture_limit(l: u32) -> Rat {
    Ratio::new(l as i64 + 1, l as i64)
}

/// The conjectured exponent must agree with the odd-cycle exponent at the
/// extremal beta = (l+1)/(2l+1).
pub fn conjecture_matches_theorem3(l: u32, alpha: Rat) -> bool {
    let beta = Ratio::new(l as i64 + 1, 2 * l as i64 + 1);
    theorem3_exponents(l, alpha, beta).t_exponent == Some(conjecture_exponent(l, alpha))
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct ContainerBound {
    /// C(n, r) * C(R, t-r), exact.
    pub value: BigUint,
    /// e^{-delta r} n <= R, when delta was supplied.
    pub precondition: Option<bool>,
}

/// The container-type upper bound on the number of independent t-sets.
pub fn container_count_bound(
    n: u64,
    r: u64,
    big_r: u64,
    t: u64,
    delta: Option<f64>,
) -> Result<ContainerBound, BoundsError> {
    if t < r {
        return Err(BoundsError::Domain(format!(
            "need t >= r, got t={t}, r={r}"
        )));
    }
    if big_r < t - r {
        return Err(BoundsError::Domain(format!(
            "need R >= t - r, got R={big_r}, t-r={}",
            t - r
        )));
    }
    let value = binomial(n, r) * binomial(big_r, t - r);
    let precondition = delta.map(|d| (-d * r as f64).exp() * n as f64 <= big_r as f64);
    Ok(ContainerBound {
        value,
        precondition,
    })
}

/// Natural log of a big integer (negative infinity for zero).
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 53;
        let top = (x >> shift).to_f64().unwrap();
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProofChain {
    /// Exact C(n,r) C(R,t-r), as a decimal string.
    pub binomial_product: String,
    pub ln_binomial: f64,
    /// ln of n^r (e R / t)^t.
    pub ln_first_majorant: f64,
    /// ln of (2^10 e^2 m log2(n) / (a t))^t.
    pub ln_second_majorant: f64,
    pub first_step_holds: bool,
    pub second_step_holds: bool,
    pub chain_holds: bool,
}

const CHAIN_TOLERANCE: f64 = 1e-9;

/// Evaluates the counting chain
/// C(n,r) C(R,t-r) <= n^r (eR/t)^t <= (2^10 e^2 m log n / (a t))^t
/// at one parameter point.
pub fn proof_chain_bound(
    n: u64,
    r: u64,
    big_r: u64,
    t: u64,
    m: u64,
    a: u64,
) -> Result<ProofChain, BoundsError> {
    if a == 0 || m == 0 || n == 0 {
        return Err(BoundsError::Domain("m, n, a must be positive".into()));
    }
    let exact = container_count_bound(n, r, big_r, t, None)?.value;
    let ln_binomial = big_ln(&exact);
    let ln_first = if t == 0 {
        r as f64 * (n as f64).ln()
    } else {
        r as f64 * (n as f64).ln() + t as f64 * (std::f64::consts::E * big_r as f64 / t as f64).ln()
    };
    let ln_second = if t == 0 {
        0.0
    } else {
        let inner =
            1024.0 * std::f64::consts::E.powi(2) * m as f64 * log2(n) / (a as f64 * t as f64);
        t as f64 * inner.ln()
    };
    let first_step_holds = ln_binomial <= ln_first + CHAIN_TOLERANCE;
    let second_step_holds = ln_first <= ln_second + CHAIN_TOLERANCE;
    Ok(ProofChain {
        binomial_product: exact.to_string(),
        ln_binomial,
        ln_first_majorant: ln_first,
        ln_second_majorant: ln_second,
        first_step_holds,
        second_step_holds,
        chain_holds: first_step_holds && second_step_holds,
    })
}
