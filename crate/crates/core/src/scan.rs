//! Streaming rows of Pascal's triangle modulo a composite `k`.
//!
//! Walking along row `n`, `C(n, m+1) = C(n, m) · (n - m) / (m + 1)`. Modulo
//! each prime power `p^α ‖ k` we keep `C(n, m)` in factored form
//! `p^v · u` with `u` a unit, so the division by `m + 1` becomes a change
//! of valuation plus multiplication by a modular inverse. The residues for
//! each prime power are then recombined with the CRT.
//!
//! A prime-power modulus such as 16 skips the CRT entirely, and for `p = 2`
//! the valuation split is a `trailing_zeros`, so the mod-16 census loop is
//! a few word operations and two table lookups per entry.

use std::borrow::Cow;

use crate::error::{domain, Result};
use crate::modarith::{crt_basis, factorize, inv_mod, mul_mod};

/// Prime powers up to this size get a precomputed inverse table.
const INVERSE_TABLE_LIMIT: u64 = 1 << 20;

/// `C(n, m)` modulo `p^α` as `p^valuation · unit`.
///
/// The valuation is the true, unclamped `ν_p(C(n, m))`: it is bounded by
/// `log_p n`, and keeping it exact means a later division by `p` can never
/// land below a value we threw away. The residue is zero whenever
/// `valuation ≥ α`; `unit` is still tracked exactly in that case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactoredResidue {
    pub prime: u64,
    pub exponent_cap: u32,
    pub valuation: u32,
    pub unit: u64,
}

impl FactoredResidue {
    pub fn residue(&self, prime_power: u64) -> u64 {
        if self.valuation >= self.exponent_cap {
            0
        } else {
            mul_mod(self.unit, self.prime.pow(self.valuation), prime_power)
        }
    }
}

#[derive(Debug, Clone)]
struct PrimePowerTrack {
    p: u64,
    alpha: u32,
    q: u64,
    /// `inverses[u]` for units `u < q`, when `q` is small enough.
    inverses: Option<Vec<u64>>,
}

impl PrimePowerTrack {
    fn new(p: u64, alpha: u32) -> Self {
        let q = p.pow(alpha);
        let inverses = (q <= INVERSE_TABLE_LIMIT)
            .then(|| (0..q).map(|u| inv_mod(u, q).unwrap_or(0)).collect());
        PrimePowerTrack {
            p,
            alpha,
            q,
            inverses,
        }
    }

    /// Splits `x ≥ 1` into `(ν_p(x), x / p^ν mod q)`.
    #[inline]
    fn split(&self, x: u64) -> (u32, u64) {
        if self.p == 2 {
            let t = x.trailing_zeros();
            return (t, (x >> t) % self.q);
        }
        let mut x = x;
        let mut v = 0;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        (v, x % self.q)
    }

    #[inline]
    fn inverse(&self, u: u64) -> u64 {
        match &self.inverses {
            Some(t) => t[u as usize],
            None => inv_mod(u, self.q).expect("unit"),
        }
    }
}

/// Precomputed factorization, inverse tables and CRT basis for a modulus.
#[derive(Debug, Clone)]
pub struct RowScanner {
    modulus: u64,
    tracks: Vec<PrimePowerTrack>,
    crt: Vec<u64>,
}

impl RowScanner {
    pub fn new(k: u64) -> Result<Self> {
        if k < 2 {
            return domain(format!("modulus must be at least 2, got {k}"));
        }
        let factors = factorize(k);
        if let Some(&(p, _)) = factors.iter().find(|&&(p, _)| p > 1 << 31) {
            return domain(format!("prime factor {p} of {k} exceeds 2^31"));
        }
        let tracks: Vec<PrimePowerTrack> = factors
            .iter()
            .map(|&(p, a)| PrimePowerTrack::new(p, a))
            .collect();
        let moduli: Vec<u64> = tracks.iter().map(|t| t.q).collect();
        Ok(RowScanner {
            modulus: k,
            crt: crt_basis(&moduli),
            tracks,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `(p, α)` for each prime power exactly dividing the modulus.
    pub fn prime_powers(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.tracks.iter().map(|t| (t.p, t.alpha))
    }

    /// Iterator over `C(n, m) mod k` for `m = 0..=n`.
    pub fn row(&self, n: u64) -> RowScan<'_> {
        RowScan::start(Cow::Borrowed(self), n)
    }

    /// Like [`RowScanner::row`] but the cursor owns the scanner.
    pub fn into_row(self, n: u64) -> RowScan<'static> {
        RowScan::start(Cow::Owned(self), n)
    }
}

/// Single-owner cursor along one row; see [`RowScanner::row`].
#[derive(Debug, Clone)]
pub struct RowScan<'a> {
    scanner: Cow<'a, RowScanner>,
    n: u64,
    m: u64,
    state: Vec<FactoredResidue>,
    done: bool,
}

impl<'a> RowScan<'a> {
    fn start(scanner: Cow<'a, RowScanner>, n: u64) -> Self {
        let state = scanner
            .tracks
            .iter()
            .map(|t| FactoredResidue {
                prime: t.p,
                exponent_cap: t.alpha,
                valuation: 0,
                unit: 1 % t.q,
            })
            .collect();
        RowScan {
            scanner,
            n,
            m: 0,
            state,
            done: false,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Column of the entry the next call to `next` returns.
    pub fn column(&self) -> u64 {
        self.m
    }

    pub fn factored(&self) -> &[FactoredResidue] {
        &self.state
    }

    fn current(&self) -> u64 {
        let tracks = &self.scanner.tracks;
        if tracks.len() == 1 {
            return self.state[0].residue(tracks[0].q);
        }
        let k = self.scanner.modulus;
        self.state
            .iter()
            .zip(tracks)
            .zip(&self.scanner.crt)
            .fold(0u64, |acc, ((f, t), &c)| {
                (acc + mul_mod(f.residue(t.q), c, k)) % k
            })
    }

    fn advance(&mut self) {
        let up = self.n - self.m;
        let down = self.m + 1;
        for (f, t) in self.state.iter_mut().zip(&self.scanner.tracks) {
            let (vu, uu) = t.split(up);
            let (vd, ud) = t.split(down);
            // C(n, m+1) is an integer, so the valuation never goes negative.
            f.valuation = f.valuation + vu - vd;
            f.unit = mul_mod(mul_mod(f.unit, uu, t.q), t.inverse(ud), t.q);
        }
        self.m += 1;
    }
}

impl Iterator for RowScan<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let value = self.current();
        if self.m == self.n {
            self.done = true;
        } else {
            self.advance();
        }
        Some(value)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = if self.done {
            0
        } else {
            (self.n - self.m + 1) as usize
        };
        (left, Some(left))
    }
}

impl ExactSizeIterator for RowScan<'_> {}

/// Stream of `C(n, m) mod k` for `m = 0..=n`.
pub fn row_residues(n: u64, k: u64) -> Result<RowScan<'static>> {
    Ok(RowScanner::new(k)?.into_row(n))
}
