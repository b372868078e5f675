//! Dense polynomials over GF(p), stored constant term first.

use super::RingError;

/// Largest field order we instantiate.
pub const FIELD_ORDER_LIMIT: u64 = 1 << 20;

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn rem_monic(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = lead * c % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// General remainder of `a` by nonzero `b` (leading coefficient inverted mod p).
fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = degree(b).expect("division by zero polynomial");
    let inv = crate::numtheory::inv_mod(b[db], p).expect("p prime");
    let monic: Vec<u64> = b[..=db].iter().map(|&c| c * inv % p).collect();
    rem_monic(a, &monic, p)
}

/// True if `f` (monic, degree >= 1) has no factor of degree `1..=deg/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match degree(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=d/2.
    for fd in 1..=d / 2 {
        let count = p.pow(fd as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(fd + 1);
            let mut v = low;
            for _ in 0..fd {
                g.push(v % p);
                v /= p;
            }
            g.push(1);
            if rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `k` over GF(p),
/// comparing coefficient vectors constant term first.
///
/// Returned with length `k + 1`, the last entry being the leading 1.
pub fn find_irreducible(p: u64, k: u32) -> Result<Vec<u64>, RingError> {
    if !crate::numtheory::is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    if k == 0 {
        return Err(RingError::InvalidParameter(
            "field degree must be positive".into(),
        ));
    }
    match p.checked_pow(k) {
        Some(q) if q <= FIELD_ORDER_LIMIT => {}
        _ => {
            return Err(RingError::SizeLimit {
                what: format!("GF({p}^{k})"),
                limit: FIELD_ORDER_LIMIT,
            })
        }
    }
    let k = k as usize;
    let mut low = vec![0u64; k];
    loop {
        let mut f = low.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return Ok(f);
        }
        // Advance in lexicographic order with the constant term most significant.
        let mut i = k;
        loop {
            if i == 0 {
                unreachable!("an irreducible polynomial of every degree exists");
            }
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
        }
    }
}
