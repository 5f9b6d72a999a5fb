//! Exact `floor(log_b q)` for positive rationals.
//!
//! Repeated multiplication by `b` is hopeless for the bases the engine uses
//! (`b - 1` is around `1e-7`, so the answers run into the millions). Instead
//! both logarithms are enclosed in certified dyadic intervals, the quotient
//! interval is floored, and precision doubles until the floor is pinned.
//! A quotient that sits on an integer `k` is settled by testing `q == b^k`
//! exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const START_PRECISION: u64 = 96;

/// `floor(log_base(x))`. Panics unless `x > 0` and `base > 1`.
pub fn floor_log(x: &BigRational, base: &BigRational) -> i64 {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    assert!(*base > BigRational::one(), "logarithm base must exceed 1");
    let mut prec = START_PRECISION;
    loop {
        let (xl, xh) = ln_bounds(x, prec);
        let (bl, bh) = ln_bounds(base, prec);
        if bl.is_positive() {
            let lower = if xl.is_negative() { xl.div_floor(&bl) } else { xl.div_floor(&bh) };
            let upper = if xh.is_negative() { xh.div_floor(&bh) } else { xh.div_floor(&bl) };
            if lower == upper {
                return to_i64(&lower);
            }
            if &upper - &lower <= BigInt::from(2) {
                let mut k = &lower + 1;
                while k <= upper {
                    if is_exact_power(x, base, &k) {
                        return to_i64(&k);
                    }
                    k += 1;
                }
            }
        }
        prec *= 2;
    }
}

fn to_i64(k: &BigInt) -> i64 {
    k.to_i64().expect("logarithm exceeds i64")
}

/// Whether `x == base^k` exactly. Sizes are compared before any power is formed.
fn is_exact_power(x: &BigRational, base: &BigRational, k: &BigInt) -> bool {
    if k.is_zero() {
        return x.is_one();
    }
    let (bn, bd) = if k.is_positive() {
        (base.numer(), base.denom())
    } else {
        (base.denom(), base.numer())
    };
    let Some(k) = k.abs().to_u64() else { return false };
    // both fractions are in lowest terms, so numerators and denominators must match
    power_equals(x.numer(), bn, k) && power_equals(x.denom(), bd, k)
}

fn power_equals(target: &BigInt, base: &BigInt, k: u64) -> bool {
    if base.is_one() {
        return target.is_one();
    }
    // base >= 2 gives base^k >= 2^k
    if k > target.bits() {
        return false;
    }
    let mut acc = BigInt::one();
    for _ in 0..k {
        acc *= base;
        if &acc > target {
            return false;
        }
    }
    &acc == target
}

/// Integers `(lo, hi)` with `lo / 2^prec <= ln x <= hi / 2^prec`.
pub(crate) fn ln_bounds(x: &BigRational, prec: u64) -> (BigInt, BigInt) {
    if *x < BigRational::one() {
        let (lo, hi) = ln_bounds(&x.recip(), prec);
        return (-hi, -lo);
    }
    let (a, c) = (x.numer(), x.denom());
    // 2^e <= x < 2^(e+1)
    let mut e = a.bits() as i64 - c.bits() as i64;
    while e > 0 && a < &(c << e as u64) {
        e -= 1;
    }
    while a >= &(c << (e + 1) as u64) {
        e += 1;
    }
    let scaled = c << e as u64;
    // ln(y) for y = a / (c 2^e) in [1, 2) via 2 atanh((y-1)/(y+1))
    let (yl, yh) = atanh_bounds(&(a - &scaled), &(a + &scaled), prec);
    let (tl, th) = atanh_bounds(&BigInt::one(), &BigInt::from(3), prec);
    let e = BigInt::from(e);
    (&e * tl * 2 + yl * 2, &e * th * 2 + yh * 2)
}

/// Bounds on `atanh(p/d) * 2^prec` for `0 <= p/d <= 1/3`, from the odd power
/// series. Each floored term loses less than one unit and the tail after the
/// first vanishing term is below `9/8` of a unit.
fn atanh_bounds(p: &BigInt, d: &BigInt, prec: u64) -> (BigInt, BigInt) {
    debug_assert!(!p.is_negative() && p * 3 <= *d);
    let p2 = p * p;
    let d2 = d * d;
    let mut num = p.clone();
    let mut den = d.clone();
    let mut lo = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let term = (&num << prec) / (&den * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        lo += term;
        num *= &p2;
        den *= &d2;
        k += 1;
    }
    let hi = &lo + k + 2;
    (lo, hi)
}
