//! Invariants checked over the full ranges they are stated for, against
//! big-integer Pascal rows.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use pascalforge::audit::{
    frac_binom, frac_double_binom_2p, frac_period, prop_frac2_2p, prop_frac_p,
};
use pascalforge::digits::nu_big;
use pascalforge::fraction::frac;
use pascalforge::{
    anton_unit, binom_exact, census_row, kummer_valuation, row_residues, RowScanner,
};

/// Exact rows `0..=max` of Pascal's triangle by addition only.
fn pascal_rows(max: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=max {
        let prev = &rows[n - 1];
        let mut row = vec![BigUint::one(); n + 1];
        for m in 1..n {
            row[m] = &prev[m - 1] + &prev[m];
        }
        rows.push(row);
    }
    rows
}

#[test]
fn scanner_matches_oracle_rows() {
    let rows = pascal_rows(256);
    for k in [2u64, 3, 4, 5, 8, 9, 16, 12, 72] {
        let scanner = RowScanner::new(k).unwrap();
        for (n, row) in rows.iter().enumerate() {
            let got: Vec<u64> = scanner.row(n as u64).collect();
            let want: Vec<u64> = row.iter().map(|c| (c % k).to_u64().unwrap()).collect();
            assert_eq!(got, want, "row {n} mod {k}");
            assert!(
                got.iter().eq(got.iter().rev()),
                "row {n} mod {k} not a palindrome"
            );
        }
    }
}

#[test]
fn kummer_and_anton_against_oracle() {
    let rows = pascal_rows(512);
    for p in [2u64, 3, 5, 7] {
        let pb = BigUint::from(p);
        for (n, row) in rows.iter().enumerate().skip(1) {
            for (m, c) in row.iter().enumerate() {
                let (n, m) = (n as u64, m as u64);
                let v = kummer_valuation(n, m, p).unwrap();
                if m >= 1 {
                    assert_eq!(v, nu_big(p, c).unwrap(), "ν_{p} C({n},{m})");
                }
                // C / p^ν ≡ (-1)^ν · unit (mod p)
                let stripped = c / pb.pow(v);
                let mut lhs = (&stripped % &pb).to_u64().unwrap();
                if v % 2 == 1 {
                    lhs = (p - lhs) % p;
                }
                assert_eq!(lhs, anton_unit(n, m, p).unwrap(), "Anton C({n},{m}) p={p}");
            }
        }
    }
}

#[test]
fn valuation_lemma_scaling() {
    for p in [2u64, 3, 5] {
        for n in 0..=128u64 {
            for m in 0..=n {
                assert_eq!(
                    kummer_valuation(p * n, p * m, p).unwrap(),
                    kummer_valuation(n, m, p).unwrap()
                );
            }
        }
    }
}

#[test]
fn absorption_identity() {
    let rows = pascal_rows(200);
    for n in 1..=200usize {
        for m in 1..=n {
            assert_eq!(
                &rows[n][m] * BigUint::from(m),
                &rows[n - 1][m - 1] * BigUint::from(n)
            );
        }
    }
    assert_eq!(binom_exact(200, 100), rows[200][100]);
}

#[test]
fn census_totals_and_odd_evenness() {
    for k in [2u64, 3, 4, 7, 16, 72] {
        for n in 0..=600u64 {
            assert_eq!(census_row(n, k).unwrap().total(), n + 1);
        }
    }
    for n in 1..=3000u64 {
        let c = census_row(n, 16).unwrap();
        assert!(c.odd_classes().all(|(_, v)| v % 2 == 0), "row {n}");
    }
}

#[test]
fn census_matches_oracle_counts() {
    let rows = pascal_rows(300);
    for k in [3u64, 8, 16, 12] {
        for (n, row) in rows.iter().enumerate() {
            let mut want = vec![0u64; k as usize];
            for c in row {
                want[(c % k).to_usize().unwrap()] += 1;
            }
            assert_eq!(census_row(n as u64, k).unwrap().counts, want);
        }
    }
}

#[test]
fn row_stream_is_lazy_and_exact() {
    let mut it = row_residues(1 << 40, 16).unwrap();
    assert_eq!(it.next(), Some(1));
    assert_eq!(it.next(), Some(0));
}

#[test]
fn propositions_over_stated_range() {
    for p in [2u64, 3, 5, 7, 11] {
        for n in 1..=2000u64 {
            let c = BigInt::from(binom_exact(n, p as i64));
            assert_eq!(prop_frac_p(n, p).unwrap(), frac_binom(n, p).unwrap());
            // C(n, p) mod n = (n/p) δ_{p|n}
            let want = if n % p == 0 { n / p } else { 0 };
            assert_eq!((c % n).to_u64().unwrap() % n, want % n);
            assert_eq!(
                prop_frac2_2p(n, p).unwrap(),
                frac_double_binom_2p(n, p).unwrap()
            );
        }
    }
}

#[test]
fn second_proof_congruence() {
    for p in [3u64, 5, 7] {
        for n in (p..=2000).step_by(p as usize) {
            let lhs = BigInt::from(binom_exact(n, 2 * p as i64)) * 2;
            let q = BigInt::from(n / p);
            let rhs: BigInt = &q * (&q - 1);
            let diff: BigInt = lhs - rhs;
            assert!((diff % n).is_zero(), "n = {n}, p = {p}");
        }
    }
}

#[test]
fn frac_sequences_are_periodic() {
    for m in [4u64, 5, 6, 10, 14] {
        let t = frac_period(m).unwrap();
        for n in 1..=3 * t {
            assert_eq!(
                frac_binom(n, m).unwrap(),
                frac_binom(n + t, m).unwrap(),
                "m={m} n={n}"
            );
        }
    }
    // minimality by brute force
    for m in [4u64, 5, 6] {
        let t = frac_period(m).unwrap();
        let seq: Vec<_> = (1..=4 * t).map(|n| frac_binom(n, m).unwrap()).collect();
        let min = (1..=t)
            .find(|&d| (0..(3 * t) as usize).all(|i| seq[i] == seq[i + d as usize]))
            .unwrap();
        assert_eq!(min, t, "m = {m}");
    }
}

#[test]
fn rewritten_digit_term_is_equivalent() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        for d in 0..p as i64 {
            assert_eq!(
                frac((p as i64 + 1) * (d - 1), p).unwrap(),
                frac(d - 1, p).unwrap(),
                "p={p} n1={d}"
            );
        }
    }
}
