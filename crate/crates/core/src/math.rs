//! Thin wrappers around `libm` so the rest of the crate stays `no_std`,
//! plus the integer-exact comparisons the separator contracts rely on.

/// `x^y` for nonnegative `x`.
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

/// Binary logarithm.
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

/// Natural logarithm.
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

/// `size <= bound` where `size` is an exact integer and `bound` a real.
///
/// Sizes in this crate stay far below 2^53, so the conversion is exact and
/// the comparison needs no tolerance.
pub fn size_le(size: usize, bound: f64) -> bool {
    (size as f64) <= bound
}

/// `⌊bound⌋` clamped to zero, for turning a real bound on an integer
/// quantity into the integer cap it actually imposes.
pub fn floor_cap(bound: f64) -> usize {
    if bound <= 0.0 {
        0
    } else {
        floor(bound) as usize
    }
}

/// `⌈x⌉` as an integer with a guard against values that sit a few ulps
/// above an exact integer after a float computation.
pub fn ceil_int(x: f64) -> usize {
    let c = ceil(x - 1e-9);
    if c <= 0.0 {
        0
    } else {
        c as usize
    }
}

/// Largest `r` with `r^d <= limit`, by integer arithmetic.
pub fn int_root(limit: u128, d: u32) -> u128 {
    if d == 0 || limit == 0 {
        return 0;
    }
    let mut r = floor(powf(limit as f64, 1.0 / d as f64)) as u128;
    while r.checked_pow(d).map(|p| p > limit).unwrap_or(true) {
        r -= 1;
    }
    while (r + 1).checked_pow(d).map(|p| p <= limit).unwrap_or(false) {
        r += 1;
    }
    r
}
