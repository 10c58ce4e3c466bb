//! Dispatch thresholds and solver limits.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::oracle::DEFAULT_ORACLE_CAP;

use super::assignment::Quarter;

/// Parses `"0.25"`, `"-1.5e-3"`, `"3/7"` or `"2"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidConfig(format!("not a number: {text:?}"));
    let s = text.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= Pow::pow(ten, scale as u32);
    } else {
        value /= Pow::pow(ten, (-scale) as u32);
    }
    Ok(if negative { -value } else { value })
}

fn rat(text: &str) -> BigRational {
    parse_rational(text).expect("constant parses")
}

/// The four thresholds of the algorithm ladder.
///
/// A branch takes the matching shortcut when the matching has at least
/// `eps1 * n` pairs, the half strategy when a forced half set has at least
/// `eps2 * n` jobs, the large-set quarter strategy when some `P` set has at
/// least `(1/2 + eps3) * n` jobs, and the small-count quarter strategy when some
/// `p` value is below `(1/4 - eps4) * n`.
#[derive(Clone, PartialEq, Eq)]
pub struct EpsilonConfig {
    eps: [BigRational; 4],
}

impl EpsilonConfig {
    /// Validates ranges, monotonicity and the premises that make each strategy's
    /// running-time bound meaningful.
    pub fn new(
        eps1: BigRational,
        eps2: BigRational,
        eps3: BigRational,
        eps4: BigRational,
    ) -> Result<Self> {
        let cfg = EpsilonConfig::unchecked(eps1, eps2, eps3, eps4);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Accepts any values. Used to force particular strategies in tests and
    /// experiments; every strategy remains exact, only the running-time
    /// guarantees are lost.
    pub fn unchecked(
        eps1: BigRational,
        eps2: BigRational,
        eps3: BigRational,
        eps4: BigRational,
    ) -> Self {
        EpsilonConfig {
            eps: [eps1, eps2, eps3, eps4],
        }
    }

    /// Parses four decimal or fractional strings without validation.
    pub fn parse_unchecked(values: [&str; 4]) -> Result<Self> {
        let [a, b, c, d] = values.map(parse_rational);
        Ok(EpsilonConfig::unchecked(a?, b?, c?, d?))
    }

    pub fn parse(values: [&str; 4]) -> Result<Self> {
        let cfg = Self::parse_unchecked(values)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let zero = BigRational::zero();
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let two = BigRational::from_integer(BigInt::from(2));
        for (i, e) in self.eps.iter().enumerate() {
            if !(e > &zero && e < &quarter) {
                return Err(Error::InvalidConfig(format!(
                    "eps{} = {} is outside (0, 1/4)",
                    i + 1,
                    e
                )));
            }
        }
        for i in 0..3 {
            if self.eps[i] > self.eps[i + 1] {
                return Err(Error::InvalidConfig(format!("eps{} > eps{}", i + 1, i + 2)));
            }
        }
        let [e1, e2, e3, e4] = &self.eps;
        if !(&two * e1 < &quarter + e3 * &half) {
            return Err(Error::InvalidConfig("need 2*eps1 < 1/4 + eps3/2".into()));
        }
        let e123 = &two * e1 + &two * e2 + e3;
        if !(e4 * &two > e123) {
            return Err(Error::InvalidConfig(
                "need eps4 > (2*eps1 + 2*eps2 + eps3)/2".into(),
            ));
        }
        if !(&two * e1 + &two * e2 + e4 < quarter) {
            return Err(Error::InvalidConfig(
                "need 2*eps1 + 2*eps2 + eps4 < 1/4".into(),
            ));
        }
        Ok(())
    }

    pub fn eps(&self, k: usize) -> &BigRational {
        &self.eps[k - 1]
    }

    /// Whether `count >= eps_k * n`.
    pub(crate) fn at_least(&self, k: usize, count: usize, n: usize) -> bool {
        let lhs = BigRational::from_integer(BigInt::from(count));
        lhs >= self.eps(k) * BigRational::from_integer(BigInt::from(n))
    }

    /// Whether `size >= (1/2 + eps3) * n`.
    pub(crate) fn large_p_set(&self, size: usize, n: usize) -> bool {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        BigRational::from_integer(BigInt::from(size))
            >= (half + self.eps(3)) * BigRational::from_integer(BigInt::from(n))
    }

    /// Whether `p < (1/4 - eps4) * n`.
    pub(crate) fn small_p_count(&self, p: usize, n: usize) -> bool {
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        BigRational::from_integer(BigInt::from(p))
            < (quarter - self.eps(4)) * BigRational::from_integer(BigInt::from(n))
    }
}

impl Default for EpsilonConfig {
    fn default() -> Self {
        EpsilonConfig::unchecked(
            rat("2.677001953125e-10"),
            rat("0.00002724628851234912872314453125"),
            rat("0.007010121770270753069780766963958740234375"),
            rat("0.016526753505895047409353537659626454114913940429688"),
        )
    }
}

impl fmt::Debug for EpsilonConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "EpsilonConfig({}, {}, {}, {})",
            self.eps[0], self.eps[1], self.eps[2], self.eps[3]
        )
    }
}

/// Default largest guessed set for the independent-quarters strategy.
pub const DEFAULT_WQUARTER_CAP: usize = 3;

/// Everything that tunes a solve without changing its answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub eps: EpsilonConfig,
    /// Largest guessed set for the independent-quarters strategy. Branches
    /// needing a larger guess fall back to a quarter strategy (still exact).
    pub wquarter_cap: usize,
    /// Job-count limit for brute-force enumeration.
    pub oracle_cap: usize,
    /// Send every quarter-stage branch to this quarter's strategy instead of
    /// following the threshold ladder. Exactness is unaffected.
    pub force_quarter: Option<Quarter>,
    /// Evaluate endpoint variants on the rayon pool.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            eps: EpsilonConfig::default(),
            wquarter_cap: DEFAULT_WQUARTER_CAP,
            oracle_cap: DEFAULT_ORACLE_CAP,
            force_quarter: None,
            parallel: true,
        }
    }
}

impl SolverConfig {
    pub fn with_eps(eps: EpsilonConfig) -> Self {
        SolverConfig {
            eps,
            ..SolverConfig::default()
        }
    }
}

/// `n / d` as an exact rational, for reporting.
pub fn ratio(n: usize, d: usize) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
