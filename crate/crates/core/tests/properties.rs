//! Property tests against independent oracles.

use avoidable::arith::{binom2, frac_sqrt_half, isqrt, isqrt_u128, surd_floor, FixedPoint};
use avoidable::bipartite::{
    bipartite_realize, split_parameters, verify_bipartite_decomp, BipartitePair,
};
use avoidable::criterion::{
    avoidability_certificate, clique_forest_realizable, eval_criterion_with, lr_values,
    CliqueForestCert, PairMF,
};
use avoidable::oracle::{arrows, SmallGraph};
use avoidable::pell::{raw_stream, verify_pell_state};
use avoidable::witness::{build_witness_or_complement, exhaustive_arrow_check, verify_structure};
use avoidable::Graph;
use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn isqrt_matches_num_bigint_on_a_million_samples() {
    let mut r = rng(1);
    for i in 0..1_000_000u32 {
        // mix magnitudes so small values are not drowned out
        let bits = 1 + (i % 256) as u64;
        let n: BigUint = r.gen_biguint(bits);
        let ours = isqrt(&BigInt::from(n.clone())).unwrap();
        assert_eq!(ours, BigInt::from(n.sqrt()), "isqrt({n})");
    }
}

#[test]
fn isqrt_near_perfect_squares() {
    let mut r = rng(2);
    for _ in 0..20_000 {
        let s = r.gen_biguint(200);
        let sq = &s * &s;
        for (n, want) in [
            (sq.clone(), s.clone()),
            (&sq + 2u32 * &s, s.clone()),
            (&sq + 2u32 * &s + 1u32, &s + 1u32),
        ] {
            assert_eq!(isqrt(&BigInt::from(n)).unwrap(), BigInt::from(want));
        }
        if !s.is_zero() {
            assert_eq!(
                isqrt(&BigInt::from(&sq - 1u32)).unwrap(),
                BigInt::from(&s - 1u32)
            );
        }
    }
    assert!(isqrt(&BigInt::from(-1)).is_err());
}

#[test]
fn isqrt_u128_matches_big() {
    let mut r = rng(3);
    for i in 0..200_000u32 {
        let n: u128 = r.gen::<u128>() >> (i % 128);
        assert_eq!(
            BigUint::from(isqrt_u128(n)),
            BigUint::from(n).sqrt(),
            "isqrt_u128({n})"
        );
    }
    assert_eq!(isqrt_u128(u128::MAX), u64::MAX as u128);
}

/// Largest `k` with `2k - c <= 0` or `(2k - c)^2 <= D`, by bisection.
fn surd_floor_oracle(c: &BigInt, d: &BigInt) -> BigInt {
    let ok = |k: &BigInt| {
        let t: BigInt = 2 * k - c;
        !t.is_positive() || &t * &t <= *d
    };
    let mut lo = c.div_floor(&BigInt::from(2)) - 1;
    let mut hi = &lo + 2;
    while ok(&hi) {
        hi = &lo + (&hi - &lo) * 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if ok(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[test]
fn surd_floor_matches_bisection() {
    let mut r = rng(4);
    for i in 0..50_000u32 {
        let d = BigInt::from(r.gen_biguint(1 + (i % 160) as u64));
        let c = BigInt::from(r.gen_range(-1000i64..1000));
        assert_eq!(
            surd_floor(&c, &d).unwrap(),
            surd_floor_oracle(&c, &d),
            "c = {c}, D = {d}"
        );
    }
}

#[test]
fn frac_sqrt_half_defining_inequality() {
    let mut r = rng(5);
    for i in 0..20_000u32 {
        let d = BigInt::from(r.gen_biguint(1 + (i % 300) as u64));
        let b = [32u32, 64, 128, 200][i as usize % 4];
        let frac = frac_sqrt_half(&d, b).unwrap();
        // T = floor(sqrt(D)/2) * 2^b + value must satisfy (2T)^2 <= D 2^(2b) < (2T + 2)^2
        let whole = isqrt(&d).unwrap() >> 1u32;
        let mut t: BigInt = (whole << b as u64) + BigInt::from(frac.value().clone());
        let scaled = &d << (2 * b as u64);
        let two_t: BigInt = 2 * &t;
        if &two_t * &two_t > scaled {
            // isqrt(D) odd straddles the integer boundary; value already wrapped
            t -= BigInt::one() << b as u64;
        }
        let lo: BigInt = 2 * &t;
        let hi: BigInt = &lo + 2;
        assert!(
            &lo * &lo <= scaled && scaled < &hi * &hi,
            "D = {d}, b = {b}"
        );
    }
}

#[test]
fn lr_agrees_with_big_evaluation() {
    let mut r = rng(6);
    for _ in 0..20_000 {
        let m: i64 = r.gen_range(5..2_000_000);
        let span = ((m - 5) * (m - 5) / 4).min(10 * m);
        let q = r.gen_range(-span..=span);
        let lr = lr_values(m, q).unwrap();
        let ev = eval_criterion_with(&BigInt::from(m), &BigInt::from(q), 64).unwrap();
        assert_eq!(
            (BigInt::from(lr.l), BigInt::from(lr.r)),
            (ev.l, ev.r),
            "m = {m}, q = {q}"
        );
    }
}

/// Realizability straight from the definition: try every clique size.
fn realizable_by_definition(m: u64, f: u64) -> bool {
    (0..=m).any(|x| {
        let k = binom2(x);
        let v = m - x;
        k <= f && (f - k == 0 || f - k < v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4000))]

    #[test]
    fn lr_iff_impossible(m in 5u64..200_000, q_frac in -1.0f64..1.0) {
        let span = (((m - 5) * (m - 5)) / 4).min(m) as f64;
        let q = (q_frac * span) as i64;
        if let Ok(pair) = PairMF::centered(m, q) {
            let lr = lr_values(m as i64, q).unwrap();
            prop_assert_eq!(clique_forest_realizable(pair).is_impossible(), lr.holds);
        }
    }

    #[test]
    fn search_matches_definition(m in 1u64..400, f_frac in 0.0f64..=1.0) {
        let f = (f_frac * binom2(m) as f64) as u64;
        let pair = PairMF::new(m, f).unwrap();
        let cert = clique_forest_realizable(pair);
        prop_assert_eq!(!cert.is_impossible(), realizable_by_definition(m, f));
        if let CliqueForestCert::Realizable { x, forest_vertices, forest_edges } = cert {
            prop_assert_eq!(forest_vertices, m - x);
            prop_assert_eq!(binom2(x) + forest_edges, f);
            prop_assert!(forest_edges == 0 || forest_edges < forest_vertices);
        }
    }

    #[test]
    fn certificate_complement_symmetry(m in 1u64..500, f_frac in 0.0f64..=1.0) {
        let f = (f_frac * binom2(m) as f64) as u64;
        let p = PairMF::new(m, f).unwrap();
        prop_assert_eq!(avoidability_certificate(p).is_ok(), avoidability_certificate(p.complement()).is_ok());
    }
}

#[test]
fn frac_window_matches_lr() {
    let mut r = rng(7);
    let eps_bits = 64;
    let (mut checked, mut skipped) = (0, 0);
    while checked < 20_000 {
        let m: i64 = r.gen_range(50..5_000_000);
        let q = r.gen_range(-m..=m);
        let Ok(lr) = lr_values(m, q) else { continue };
        let ev = eval_criterion_with(&BigInt::from(m), &BigInt::from(q), 128).unwrap();
        let near = |p: &FixedPoint| ev.frac_y.within(p, eps_bits);
        let zero = FixedPoint::from_ratio(0, 1, 128);
        let half = FixedPoint::from_ratio(1, 2, 128);
        let one = FixedPoint::from_ratio(1, 1, 128);
        if near(&zero) || near(&half) || near(&one) || near(&ev.d_approx) {
            skipped += 1;
            continue;
        }
        assert_eq!(ev.frac_in_window(), lr.holds, "m = {m}, q = {q}");
        checked += 1;
    }
    assert!(
        skipped < checked / 10,
        "too many endpoint samples: {skipped}"
    );
}

#[test]
fn d_tends_to_three_halves_minus_root_two() {
    let limit = 1.5 - std::f64::consts::SQRT_2;
    let mut r = rng(8);
    for _ in 0..2000 {
        let m: i64 = r.gen_range(10_000..10_000_000_000);
        for q in [0, 6 * m, -6 * m] {
            let ev = eval_criterion_with(&BigInt::from(m), &BigInt::from(q), 128).unwrap();
            let d = ev.d_approx.to_f64();
            assert!((d - limit).abs() < 1e-3, "d = {d} at m = {m}, q = {q}");
        }
    }
}

#[test]
fn pell_two_hundred_steps() {
    let seven = BigInt::from(7);
    let eight = BigInt::from(8);
    let mut last_m = BigInt::zero();
    for st in raw_stream().take(201) {
        assert_eq!(&st.x * &st.x - 2 * &st.y * &st.y, seven);
        assert!(verify_pell_state(&st).all_pass(), "step {}", st.s);
        let xm = st.x.mod_floor(&eight).to_u8().unwrap();
        let ym = st.y.mod_floor(&eight).to_u8().unwrap();
        let s = st.s as usize;
        assert_eq!(
            (xm, ym),
            ([3, 5, 3, 5][s % 4], [1, 1, 5, 5][s % 4]),
            "step {s}"
        );
        assert!(st.m() > last_m);
        last_m = st.m();
    }
}

fn random_graph(r: &mut ChaCha8Rng, n: usize, density: f64) -> Graph {
    let mut g = Graph::new(n);
    for j in 0..n {
        for i in 0..j {
            if r.gen_bool(density) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[test]
fn graph6_round_trip() {
    let mut r = rng(9);
    for i in 0..3000 {
        let n = [0, 1, 2, 5, 17, 62, 63, 64, 100, 300][i % 10];
        let density = r.gen_range(0.0..1.0);
        let g = random_graph(&mut r, n, density);
        let s = g.to_graph6();
        assert_eq!(Graph::from_graph6(&s).unwrap(), g, "{s}");
        if n <= 16 {
            let small = SmallGraph::from_graph(&g).unwrap();
            assert_eq!(small.to_graph6(), s);
            assert_eq!(small.to_graph(), g);
        }
    }
}

/// Shortest cycle via removing each edge and measuring the remaining path.
fn girth_oracle(g: &Graph) -> Option<usize> {
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    edges
        .iter()
        .filter_map(|&(u, v)| {
            let mut dist = vec![usize::MAX; n];
            dist[u] = 0;
            let mut queue = std::collections::VecDeque::from([u]);
            while let Some(a) = queue.pop_front() {
                for b in g.neighbors(a) {
                    if (a, b) == (u, v) || (a, b) == (v, u) || dist[b] != usize::MAX {
                        continue;
                    }
                    dist[b] = dist[a] + 1;
                    queue.push_back(b);
                }
            }
            (dist[v] != usize::MAX).then(|| dist[v] + 1)
        })
        .min()
}

#[test]
fn girth_matches_edge_removal() {
    let mut r = rng(10);
    for i in 0..3000 {
        let n = 1 + i % 40;
        let density = r.gen_range(0.0..0.25);
        let g = random_graph(&mut r, n, density);
        assert_eq!(g.girth(), girth_oracle(&g), "{}", g.to_graph6());
        assert_eq!(g.is_forest(), g.girth().is_none());
    }
    for k in 3..30 {
        assert_eq!(Graph::cycle(k).girth(), Some(k));
    }
}

#[test]
fn witness_builder_sound_and_deterministic() {
    let mut r = rng(11);
    for _ in 0..400 {
        let n = r.gen_range(1..60usize);
        let e = r.gen_range(0..=binom2(n as u64));
        let p = r.gen_range(3..8usize);
        let a = build_witness_or_complement(n, e, p);
        assert_eq!(a, build_witness_or_complement(n, e, p));
        if let Ok(w) = a {
            assert_eq!((w.graph.order(), w.graph.edge_count() as u64), (n, e));
            verify_structure(&w).unwrap();
            let s = w.structured();
            if let Some(girth) = s.induced(&w.girth_part).girth() {
                assert!(girth > p);
            }
        }
    }
}

#[test]
fn oracle_duality_and_exhaustive_check() {
    let mut r = rng(12);
    for _ in 0..3000 {
        let n = r.gen_range(1..=10usize);
        let density = r.gen_range(0.0..1.0);
        let g = random_graph(&mut r, n, density);
        let small = SmallGraph::from_graph(&g).unwrap();
        let m = r.gen_range(1..=n as u64);
        let pair = PairMF::new(m, r.gen_range(0..=binom2(m))).unwrap();
        let a = arrows(&small, pair);
        assert_eq!(a, arrows(&small.complement(), pair.complement()));
        assert_eq!(a, exhaustive_arrow_check(&g, pair).unwrap());
    }
}

#[test]
fn bipartite_random_sizes() {
    let mut r = rng(13);
    for _ in 0..5000 {
        let m = r.gen_range(1..=200u64);
        let f = r.gen_range(0..=m * m / 2);
        let pair = BipartitePair::new(m, f).unwrap();
        let d = bipartite_realize(pair).unwrap();
        verify_bipartite_decomp(&d, pair).unwrap();
        assert_eq!(d.edge_count(), f);
        assert!(d.case != 3 || m % 2 == 1);
        let (x, y) = split_parameters(m, f);
        if x > 0 {
            assert!(x * y <= f && x * (y + 1) > f, "y not maximal at ({m}, {f})");
        }
        let c = pair.complement();
        assert_eq!(c.complement(), pair);
    }
}
