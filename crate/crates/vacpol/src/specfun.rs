//! Shared coefficient machinery: harmonic numbers, factorial and
//! double-factorial tables, the `c`- and `r`-coefficient families, and the
//! mathematical constants they depend on.
//!
//! Two independent arithmetic routes are provided for every coefficient:
//!
//! - a compensated `f64` route ([`coeff_c`], [`coeff_r`]), which combines
//!   tabulated reciprocal factorials term by term so no intermediate
//!   product can overflow;
//! - an exact big-rational route ([`exact`]), which fills
//!   [`CoefficientCache`] and serves as the reference the float route is
//!   tested against.
//!
//! The `c` sums are well conditioned (one sign change across `m`), so the
//! float route reproduces them to full precision at every order. The
//! `r` double sums are different: the inner sum over `m` at fixed `k` has
//! a constant sign, but the value of the whole sum is exponentially
//! smaller than its `k` blocks (condition number near `3^(2j)`), so past
//! `j ≈ 8` no f64 summation, compensated or not, can keep full relative
//! accuracy. The float `r` route is still fine for series evaluation
//! because its absolute error sits far below every term the series pair
//! it with can resolve, but the cache is filled from the exact route.

use crate::kahan::KahanSum;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Riemann zeta function at 3 (Apery's constant).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Largest order accepted by the float coefficient route: beyond this the
/// squared double-factorial reciprocals drift into subnormal territory.
pub const MAX_FLOAT_ORDER: usize = 72;

/// H_j = 1 + 1/2 + ... + 1/j, with H_0 = 0.
pub fn harmonic_number(j: usize) -> f64 {
    let mut acc = KahanSum::new();
    for k in 1..=j {
        acc.add(1.0 / k as f64);
    }
    acc.value()
}

/// n!! with the empty-product conventions (-1)!! = 0!! = 1.
///
/// Panics if `n < -1`.
pub fn double_factorial(n: i64) -> f64 {
    assert!(n >= -1, "double_factorial: n must be >= -1, got {n}");
    let mut acc = 1.0_f64;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

/// n! as f64; exact for n <= 22, correctly built up to the overflow edge.
pub fn factorial(n: usize) -> f64 {
    let mut acc = 1.0_f64;
    for k in 2..=n {
        acc *= k as f64;
    }
    acc
}

/// Reciprocal factorial table 1/0!, 1/1!, ..., 1/n!.
fn inv_factorials(n: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(1.0);
    for k in 1..=n {
        let prev = t[k - 1];
        t.push(prev / k as f64);
    }
    t
}

/// Reciprocal double-factorial table 1/0!!, 1/1!!, ..., 1/n!!.
fn inv_double_factorials(n: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(1.0);
    if n >= 1 {
        t.push(1.0);
    }
    for k in 2..=n {
        let prev = t[k - 2];
        t.push(prev / k as f64);
    }
    t
}

/// The pair (c1_j, c2_j), compensated floating point.
///
/// Both are single sums over `m = 0..=j`; each term is assembled from
/// reciprocal factors so that no intermediate exceeds 1 in magnitude.
pub fn coeff_c(j: usize) -> (f64, f64) {
    assert!(j <= MAX_FLOAT_ORDER, "coeff_c: order {j} too large for the float route");
    let inv_fact = inv_factorials(j);
    let inv_dfact = inv_double_factorials(2 * j + 1);
    let mut harmonic = 0.0_f64;
    let mut inv_pow4 = 1.0_f64; // 4^-m
    let mut c1 = KahanSum::new();
    let mut c2 = KahanSum::new();
    for m in 0..=j {
        if m > 0 {
            harmonic += 1.0 / m as f64;
            inv_pow4 *= 0.25;
        }
        let odd = (2 * m + 1) as f64;
        let gap = (j - m + 1) as f64;
        let spread = (2 * j + 1) as f64 - (4 * m) as f64; // 2j - 4m + 1
        let idf = inv_dfact[2 * (j - m) + 1];
        let base = inv_pow4 * inv_fact[m] * inv_fact[m] * idf * idf / odd;
        c1.add(-0.25 * spread / gap * base);
        c2.add(0.5 * base * (1.0 / odd + 0.5 * spread / gap * harmonic));
    }
    (c1.value(), c2.value())
}

/// The pair (r1_j, r2_j), compensated floating point.
///
/// Double sum over `k = 1..=2j+1`, `m = 0..=k`; terms with `k - m` odd are
/// skipped outright (their parity factor is exactly zero), so half-integer
/// factorials are never formed.
pub fn coeff_r(j: usize) -> (f64, f64) {
    assert!(j <= MAX_FLOAT_ORDER, "coeff_r: order {j} too large for the float route");
    let top = 2 * j + 1;
    let inv_fact = inv_factorials(top);
    let mut harmonic = vec![0.0_f64; j + 2];
    for i in 1..harmonic.len() {
        harmonic[i] = harmonic[i - 1] + 1.0 / i as f64;
    }
    let mut r1 = KahanSum::new();
    let mut r2 = KahanSum::new();
    for k in 1..=top {
        let inv_k = 1.0 / k as f64;
        for m in 0..=k {
            if (k - m) % 2 != 0 {
                continue;
            }
            let half = (k - m) / 2;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let t = sign
                * inv_k
                * 0.5_f64.powi((k - m) as i32)
                * inv_fact[m]
                * inv_fact[2 * j + 1 - k]
                * inv_fact[half]
                * inv_fact[half];
            r1.add(t);
            r2.add(t * (inv_k + harmonic[half]));
        }
    }
    (r1.value(), r2.value())
}

/// Precomputed coefficient and lookup tables shared by every series.
///
/// Immutable after construction; cheap to share across threads by
/// reference. The default constructor fills the coefficient arrays from
/// the exact rational route; [`CoefficientCache::new_float`] is the
/// compensated-float fallback (identical to 1e-13 relative, see tests).
#[derive(Debug, Clone)]
pub struct CoefficientCache {
    max_order: usize,
    c1: Vec<f64>,
    c2: Vec<f64>,
    r1: Vec<f64>,
    r2: Vec<f64>,
    harmonic: Vec<f64>,
    factorial: Vec<f64>,
    double_factorial: Vec<f64>,
}

fn factorial_table(n: usize) -> Vec<f64> {
    let mut t = Vec::with_capacity(n + 1);
    t.push(1.0);
    for k in 1..=n {
        let next = t[k - 1] * k as f64;
        if !next.is_finite() {
            break;
        }
        t.push(next);
    }
    t
}

fn double_factorial_table(n: usize) -> Vec<f64> {
    let mut t = vec![1.0, 1.0];
    for k in 2..=n {
        let next = t[k - 2] * k as f64;
        if !next.is_finite() {
            break;
        }
        t.push(next);
    }
    t.truncate(n + 1);
    t
}

/// Default j-cap for the coefficient arrays: generous for every series in
/// this crate up to the series/quadrature switch point.
pub const DEFAULT_MAX_ORDER: usize = 64;

impl CoefficientCache {
    /// Build with the exact rational backend.
    pub fn new(max_order: usize) -> Self {
        let mut c1 = Vec::with_capacity(max_order + 1);
        let mut c2 = Vec::with_capacity(max_order + 1);
        let mut r1 = Vec::with_capacity(max_order + 1);
        let mut r2 = Vec::with_capacity(max_order + 1);
        let mut harmonic = Vec::with_capacity(max_order + 1);
        for j in 0..=max_order {
            let (a, b) = exact::coeff_c_exact(j);
            c1.push(exact::to_f64(&a));
            c2.push(exact::to_f64(&b));
            let (a, b) = exact::coeff_r_exact(j);
            r1.push(exact::to_f64(&a));
            r2.push(exact::to_f64(&b));
            harmonic.push(exact::to_f64(&exact::harmonic_exact(j)));
        }
        Self {
            max_order,
            c1,
            c2,
            r1,
            r2,
            harmonic,
            factorial: factorial_table(2 * max_order + 1),
            double_factorial: double_factorial_table(2 * max_order + 1),
        }
    }

    /// Compensated-float fallback constructor for contexts without bignum.
    pub fn new_float(max_order: usize) -> Self {
        assert!(max_order <= MAX_FLOAT_ORDER);
        let mut c1 = Vec::with_capacity(max_order + 1);
        let mut c2 = Vec::with_capacity(max_order + 1);
        let mut r1 = Vec::with_capacity(max_order + 1);
        let mut r2 = Vec::with_capacity(max_order + 1);
        let mut harmonic = vec![0.0_f64; max_order + 1];
        for j in 0..=max_order {
            let (a, b) = coeff_c(j);
            c1.push(a);
            c2.push(b);
            let (a, b) = coeff_r(j);
            r1.push(a);
            r2.push(b);
            if j > 0 {
                harmonic[j] = harmonic[j - 1] + 1.0 / j as f64;
            }
        }
        Self {
            max_order,
            c1,
            c2,
            r1,
            r2,
            harmonic,
            factorial: factorial_table(2 * max_order + 1),
            double_factorial: double_factorial_table(2 * max_order + 1),
        }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    #[inline]
    pub fn c1(&self, j: usize) -> f64 {
        self.c1[j]
    }

    #[inline]
    pub fn c2(&self, j: usize) -> f64 {
        self.c2[j]
    }

    #[inline]
    pub fn r1(&self, j: usize) -> f64 {
        self.r1[j]
    }

    #[inline]
    pub fn r2(&self, j: usize) -> f64 {
        self.r2[j]
    }

    #[inline]
    pub fn harmonic(&self, j: usize) -> f64 {
        self.harmonic[j]
    }

    /// n!, tabulated through 2*max_order + 1 (capped at the f64 range).
    #[inline]
    pub fn factorial(&self, n: usize) -> f64 {
        self.factorial[n]
    }

    /// n!!, tabulated through 2*max_order + 1 (capped at the f64 range).
    #[inline]
    pub fn double_factorial(&self, n: usize) -> f64 {
        self.double_factorial[n]
    }
}

impl Default for CoefficientCache {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_ORDER)
    }
}

/// Exact rational evaluation of the same sums.
///
/// This is the reference route: the float route is accepted only where it
/// matches these values (see the coefficient-oracle acceptance test).
/// The `r` double sums are accumulated as big integers over one common
/// denominator and reduced once at the end, which keeps the cost of a
/// full cache build in the hundreds of milliseconds.
pub mod exact {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    pub fn to_f64(r: &BigRational) -> f64 {
        r.to_f64().expect("rational outside f64 range")
    }

    pub fn factorial_big(n: usize) -> BigInt {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= k;
        }
        acc
    }

    /// n!! for n >= -1.
    pub fn double_factorial_big(n: i64) -> BigInt {
        assert!(n >= -1);
        let mut acc = BigInt::one();
        let mut k = n;
        while k > 1 {
            acc *= k;
            k -= 2;
        }
        acc
    }

    pub fn harmonic_exact(j: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for k in 1..=j {
            acc += BigRational::new(BigInt::one(), BigInt::from(k));
        }
        acc
    }

    fn ratio(num: BigInt, den: BigInt) -> BigRational {
        BigRational::new(num, den)
    }

    fn lcm_upto(n: usize) -> BigInt {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc = acc.lcm(&BigInt::from(k));
        }
        acc
    }

    /// (c1_j, c2_j) by direct term-by-term evaluation.
    pub fn coeff_c_exact(j: usize) -> (BigRational, BigRational) {
        let mut c1 = BigRational::zero();
        let mut c2 = BigRational::zero();
        let mut harmonic = BigRational::zero();
        for m in 0..=j {
            if m > 0 {
                harmonic += ratio(BigInt::one(), BigInt::from(m));
            }
            let spread = BigInt::from(2 * j as i64 - 4 * m as i64 + 1);
            let odd = BigInt::from(2 * m + 1);
            let gap = BigInt::from(j - m + 1);
            let mf = factorial_big(m);
            let df = double_factorial_big(2 * (j - m) as i64 + 1);
            let den = &odd * (BigInt::one() << (2 * m)) * (&mf * &mf) * (&df * &df);
            let base = ratio(BigInt::one(), den);
            c1 += ratio(-&spread, BigInt::from(4)) / &gap * &base;
            let inner = ratio(BigInt::one(), odd)
                + ratio(spread, BigInt::from(2) * gap) * &harmonic;
            c2 += ratio(BigInt::one(), BigInt::from(2)) * base * inner;
        }
        (c1, c2)
    }

    /// (r1_j, r2_j): the double sum with the odd `k - m` terms skipped,
    /// everything brought over the common denominator
    /// `lcm(1..=2j+1) * (2j+1)! * 4^j * (j!)^2`.
    pub fn coeff_r_exact(j: usize) -> (BigRational, BigRational) {
        let top = 2 * j + 1;
        let fact: Vec<BigInt> = {
            let mut f = Vec::with_capacity(top + 1);
            f.push(BigInt::one());
            for k in 1..=top {
                let prev = f[k - 1].clone();
                f.push(prev * BigInt::from(k));
            }
            f
        };
        let lcm = lcm_upto(top);
        // H~_i = lcm * H_i, an exact integer for i <= j < top
        let mut htilde: Vec<BigInt> = Vec::with_capacity(j + 1);
        htilde.push(BigInt::zero());
        for i in 1..=j {
            let prev = htilde[i - 1].clone();
            htilde.push(prev + &lcm / BigInt::from(i));
        }
        let pow4: Vec<BigInt> = {
            let mut p = Vec::with_capacity(j + 1);
            p.push(BigInt::one());
            for i in 1..=j {
                let prev = p[i - 1].clone();
                p.push(prev * 4);
            }
            p
        };
        // a_i = j! / i!
        let inv_ifact: Vec<BigInt> = {
            let mut a = Vec::with_capacity(j + 1);
            a.push(fact[j].clone());
            for i in 1..=j {
                let prev = a[i - 1].clone();
                a.push(prev / BigInt::from(i));
            }
            a
        };

        let mut r1_num = BigInt::zero();
        let mut r2_num = BigInt::zero();
        for k in 1..=top {
            let binom = &fact[top] / (&fact[k] * &fact[top - k]);
            let lcm_over_k = &lcm / BigInt::from(k);
            // inner sums over i with m = k - 2i >= 0
            let mut s1 = BigInt::zero();
            let mut s2 = BigInt::zero();
            let mut falling = BigInt::one(); // k! / (k - 2i)!
            let mut i = 0usize;
            loop {
                let m = k - 2 * i;
                let base = &falling * &pow4[j - i] * (&inv_ifact[i] * &inv_ifact[i]);
                s1 += &base;
                s2 += base * &htilde[i];
                if m < 2 || i + 1 > j {
                    break;
                }
                falling *= BigInt::from(m * (m - 1));
                i += 1;
            }
            let block = binom * &lcm_over_k;
            let signed = if k % 2 == 0 { block } else { -block };
            r1_num += &signed * &s1;
            r2_num += &signed * (&lcm_over_k * &s1 + &s2);
        }
        let d1 = &lcm * &fact[top] * &pow4[j] * (&fact[j] * &fact[j]);
        let r1 = ratio(r1_num, d1.clone());
        let r2 = ratio(r2_num, d1 * &lcm);
        (r1, r2)
    }
}
