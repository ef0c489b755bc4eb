//! Property runs for the counting chain and the exponent algebra.

use num_rational::Ratio;
use ramsey_core::bounds::{conjecture_exponent, proof_chain_bound, theorem3_exponents, Rat};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// The chain C(n,r)C(R,t-r) <= n^r (eR/t)^t <= (2^10 e^2 m log n/(at))^t is
/// an identity of the construction's own parameter shape: r = t/log n,
/// R = 2^10 m log n / a, t <= R. Sample a thousand such tuples and check it.
#[test]
fn chain_holds_on_construction_shaped_tuples() {
    let mut rng = StdRng::seed_from_u64(314);
    let mut checked = 0;
    while checked < 1000 {
        let n: u64 = rng.gen_range(8..1024);
        let log_n = (n as f64).log2();
        // a >= log n / 4 keeps t <= R; b in [a, 4a] keeps t positive but
        // small enough for exact binomials.
        let a: u64 = rng.gen_range(((log_n / 4.0).ceil() as u64).max(2)..128);
        let b: u64 = a * rng.gen_range(1..=4);
        let m: u64 = rng.gen_range(2..5000);
        let t = (256.0 * n as f64 * log_n * log_n / (a as f64 * b as f64)).floor() as u64;
        if t == 0 || t > 400 {
            continue;
        }
        let r = (t as f64 / log_n).floor() as u64;
        let big_r = (1024.0 * m as f64 * log_n / a as f64).floor() as u64;
        if t > big_r || big_r < t - r {
            continue;
        }
        let chain = proof_chain_bound(n, r, big_r, t, m, a).unwrap();
        assert!(
            chain.chain_holds,
            "chain failed at n={n} r={r} R={big_r} t={t} m={m} a={a}: {chain:?}"
        );
        checked += 1;
    }
}

#[test]
fn t_exponent_increases_with_alpha_at_extremal_beta() {
    for l in 1..=5u32 {
        let beta = Ratio::new(l as i64 + 1, 2 * l as i64 + 1);
        let mut prev: Option<Rat> = None;
        for alpha in 1..=10i64 {
            let r = theorem3_exponents(l, Ratio::from_integer(alpha), beta);
            let t = r.t_exponent.expect("valid at extremal beta");
            if let Some(p) = prev {
                assert!(t >= p, "l={l}, alpha={alpha}");
            }
            prev = Some(t);
            // Consistency with the conditional exponent at the same point.
            assert_eq!(t, conjecture_exponent(l, Ratio::from_integer(alpha)));
        }
    }
}
