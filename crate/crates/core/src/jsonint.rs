//! Serialization of big integers: plain numbers while they are exactly
//! representable as IEEE doubles, decimal strings beyond `2^53 - 1`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

pub const MAX_SAFE: i64 = (1 << 53) - 1;

pub fn big<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match x.to_i64() {
        Some(v) if v.abs() <= MAX_SAFE => s.serialize_i64(v),
        _ => s.collect_str(x),
    }
}

pub fn wide<S: Serializer>(x: &u64, s: S) -> Result<S::Ok, S::Error> {
    if *x <= MAX_SAFE as u64 {
        s.serialize_u64(*x)
    } else {
        s.collect_str(x)
    }
}
