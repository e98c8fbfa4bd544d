//! Word-size modular arithmetic helpers.

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization `(p, e)` in increasing order of `p`; empty for 1.
pub fn factorize(mut k: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    if k & 1 == 0 {
        let t = k.trailing_zeros();
        out.push((2, t));
        k >>= t;
    }
    let mut p = 3u64;
    while p.saturating_mul(p) <= k {
        if k.is_multiple_of(p) {
            let mut e = 0;
            while k.is_multiple_of(p) {
                k /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 2;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

/// For pairwise coprime moduli `q_i` with product `k`, the idempotents
/// `c_i ≡ 1 (mod q_i)`, `c_i ≡ 0 (mod q_j)`, so `x = Σ r_i c_i mod k`.
pub fn crt_basis(moduli: &[u64]) -> Vec<u64> {
    let k: u64 = moduli.iter().product();
    moduli
        .iter()
        .map(|&q| {
            let rest = k / q;
            let inv = inv_mod(rest % q, q).expect("CRT moduli must be pairwise coprime");
            mul_mod(rest, inv, k)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(3_215_031_751));
        assert_eq!(factorize(72), vec![(2, 3), (3, 2)]);
        assert_eq!(factorize(16), vec![(2, 4)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(
            factorize(2 * 2_147_483_647),
            vec![(2, 1), (2_147_483_647, 1)]
        );
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 8), Some(3));
        assert_eq!(inv_mod(2, 8), None);
        for m in 2..50u64 {
            for a in 1..m {
                if let Some(i) = inv_mod(a, m) {
                    assert_eq!(mul_mod(a, i, m), 1);
                }
            }
        }
    }

    #[test]
    fn crt_recombines() {
        let basis = crt_basis(&[8, 9]);
        for x in 0..72u64 {
            let y = (x % 8 * basis[0] + x % 9 * basis[1]) % 72;
            assert_eq!(x, y);
        }
    }
}
