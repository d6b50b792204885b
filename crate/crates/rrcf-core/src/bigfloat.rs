//! Helpers over the arbitrary-precision real type.
//!
//! All operations round to nearest (ties to even). Functions that need
//! transcendental constants share a thread-local constants cache.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint, Sign as IntSign};
use num_traits::{Signed, Zero};
use std::cell::RefCell;
use std::cmp::Ordering;

use crate::BigRational;

pub const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Runs `f` with the thread-local constants cache.
pub fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

pub fn bf_i64(v: i64, p: usize) -> BigFloat {
    BigFloat::from_i64(v, p)
}

pub fn bf_zero(p: usize) -> BigFloat {
    BigFloat::from_i8(0, p)
}

pub fn bf_one(p: usize) -> BigFloat {
    BigFloat::from_i8(1, p)
}

/// `pi` at `p` bits.
pub fn pi(p: usize) -> BigFloat {
    with_consts(|cc| cc.pi(p, RM))
}

/// `2*pi` at `p` bits.
pub fn two_pi(p: usize) -> BigFloat {
    let pi = with_consts(|cc| cc.pi(p + 8, RM));
    pi.mul(&bf_i64(2, p), p, RM)
}

/// Exact conversion of a big integer into a big float.
pub fn bf_from_bigint(n: &BigInt, p: usize) -> BigFloat {
    let target = p.max(64);
    let digits = n.magnitude().to_u64_digits();
    let Some((top, rest)) = digits.split_last() else {
        return bf_zero(target);
    };
    let base = BigFloat::from_u64(1u64 << 32, 64).mul_full_prec(&BigFloat::from_u64(1u64 << 32, 64));
    let mut acc = BigFloat::from_u64(*top, 64);
    for chunk in rest.iter().rev() {
        acc = acc.mul_full_prec(&base).add_full_prec(&BigFloat::from_u64(*chunk, 64));
    }
    if n.is_negative() {
        acc.inv_sign();
    }
    acc.set_precision(target, RM).expect("set precision");
    acc
}

/// Rounds a rational to a big float at `p` bits.
pub fn bf_from_ratio(q: &BigRational, p: usize) -> BigFloat {
    let n = bf_from_bigint(q.numer(), p + 16);
    let d = bf_from_bigint(q.denom(), p + 16);
    n.div(&d, p, RM)
}

/// Exact conversion of an integer-valued big float into a big integer.
///
/// Panics if `x` is not an integer (callers apply `floor`/`ceil` first).
pub fn bigint_from_bf(x: &BigFloat) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    let (words, _n, sign, e, _inexact) = x.as_raw_parts().expect("finite value");
    let total_bits = (words.len() * 64) as i64;
    let mut mag = BigUint::zero();
    for w in words.iter().rev() {
        mag = (mag << 64) | BigUint::from(*w);
    }
    let shift = e as i64 - total_bits;
    let mag = if shift >= 0 {
        mag << (shift as usize)
    } else {
        let s = (-shift) as usize;
        assert!(
            (&mag >> s) << s == mag,
            "bigint_from_bf: value has fractional bits"
        );
        mag >> s
    };
    let s = if sign == Sign::Neg { IntSign::Minus } else { IntSign::Plus };
    BigInt::from_biguint(s, mag)
}

/// Exact rational value of a finite big float (`mantissa * 2^shift`).
pub fn ratio_from_bf(x: &BigFloat) -> BigRational {
    if x.is_zero() {
        return BigRational::from_integer(0.into());
    }
    let (words, _n, sign, e, _inexact) = x.as_raw_parts().expect("finite value");
    let total_bits = (words.len() * 64) as i64;
    let mut mag = BigUint::zero();
    for w in words.iter().rev() {
        mag = (mag << 64) | BigUint::from(*w);
    }
    let s = if sign == Sign::Neg { IntSign::Minus } else { IntSign::Plus };
    let numer = BigInt::from_biguint(s, mag);
    let shift = e as i64 - total_bits;
    if shift >= 0 {
        BigRational::from_integer(numer << (shift as usize))
    } else {
        BigRational::new(numer, BigInt::from(1) << ((-shift) as usize))
    }
}

/// Total-order comparison; panics on NaN (never produced by this crate).
pub fn bf_cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
    let c = a.cmp(b).expect("comparable values");
    c.cmp(&0)
}

pub fn bf_lt(a: &BigFloat, b: &BigFloat) -> bool {
    bf_cmp(a, b) == Ordering::Less
}

pub fn bf_le(a: &BigFloat, b: &BigFloat) -> bool {
    bf_cmp(a, b) != Ordering::Greater
}

pub fn bf_max(a: BigFloat, b: BigFloat) -> BigFloat {
    if bf_lt(&a, &b) {
        b
    } else {
        a
    }
}

/// Base-2 magnitude of `x`: the exponent `e` with `|x| in [2^(e-1), 2^e)`,
/// or `None` for zero.
pub fn log2_abs(x: &BigFloat) -> Option<i64> {
    if x.is_zero() {
        None
    } else {
        x.exponent().map(|e| e as i64)
    }
}

/// `2^e` at `p` bits.
pub fn bf_pow2(e: i32, p: usize) -> BigFloat {
    let mut one = bf_one(p);
    one.set_exponent(1 + e);
    one
}

/// Parses a decimal string into an exact rational.
///
/// Accepts optional sign, decimal point and exponent (`1.25e-3`).
pub fn rational_from_decimal_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(i) => {
            let (m, e) = s.split_at(i);
            (m, e[1..].parse::<i64>().ok()?)
        }
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let numer: BigInt = all.parse().ok()?;
    let shift = frac_part.len() as i64 - exp10;
    let ten = BigInt::from(10);
    let q = if shift >= 0 {
        BigRational::new(numer, ten.pow(shift as u32))
    } else {
        BigRational::from(numer * ten.pow((-shift) as u32))
    };
    Some(if sign < 0 { -q } else { q })
}

/// Formats `x` in scientific notation with `sig` significant decimal digits.
pub fn format_sig(x: &BigFloat, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if x.is_inf_pos() {
        return "inf".to_string();
    }
    if x.is_inf_neg() {
        return "-inf".to_string();
    }
    let (sign, digits, e) =
        with_consts(|cc| x.convert_to_radix(Radix::Dec, RM, cc)).expect("radix conversion");
    // digits d1 d2 ... with value 0.d1d2... * 10^e
    let mut ds: Vec<u8> = digits;
    while ds.len() < sig + 1 {
        ds.push(0);
    }
    // round at position `sig`
    if ds[sig] >= 5 {
        let mut i = sig;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                return finish_sig(sign, &ds[..sig], e as i64 + 1);
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    finish_sig(sign, &ds[..sig], e as i64)
}

fn finish_sig(sign: Sign, ds: &[u8], e: i64) -> String {
    let mut out = String::new();
    if sign == Sign::Neg {
        out.push('-');
    }
    out.push((b'0' + ds[0]) as char);
    let rest: String = ds[1..]
        .iter()
        .map(|d| (b'0' + d) as char)
        .collect::<String>();
    let rest = rest.trim_end_matches('0');
    if !rest.is_empty() {
        out.push('.');
        out.push_str(rest);
    }
    // value = d1.d2... * 10^(e-1)
    let sci = e - 1;
    if sci != 0 {
        out.push('e');
        out.push_str(&sci.to_string());
    }
    out
}

/// Parses a decimal string at `p` bits (correctly rounded).
pub fn bf_parse_decimal(s: &str, p: usize) -> Option<BigFloat> {
    let q = rational_from_decimal_str(s)?;
    Some(bf_from_ratio(&q, p))
}
