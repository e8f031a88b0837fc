use macfb::channel::{ErasureSpec, JointDist, Mac, User};
use macfb::checkers::{
    cf_rate_curve, check_lemma1, check_lemma2, equivalence_classes, single_rate_capacity, z_channel,
};
use macfb::info::{entropy_of, kl_of};
use macfb::io::{channel_doc_to_json, parse_channel_doc, ChannelDoc};
use macfb::optimize::DEFAULT_TOL;
use macfb::oracle::brute_force_condition2;
use macfb::regions::{
    cl_frontier, cl_joint, cl_pentagon, cl_pentagon_via_joint, cutset_bounds, CLInput,
    FeedbackModel, CERTIFY_TOL,
};
use macfb::{families, ConditionalPmf, Pmf};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

/// Random joint over three axes of sizes 2..=3, with some exact zeros.
fn joint3() -> impl Strategy<Value = JointDist> {
    (2usize..=3, 2usize..=3, 2usize..=3)
        .prop_flat_map(|(a, b, c)| {
            let n = a * b * c;
            (
                Just(vec![a, b, c]),
                prop::collection::vec(prop_oneof![1 => Just(0.0), 3 => 0.01f64..1.0], n),
            )
        })
        .prop_filter("needs mass", |(_, v)| v.iter().sum::<f64>() > 0.0)
        .prop_map(|(shape, v)| JointDist::from_shape(&shape, normalized(v)).unwrap())
}

fn mac_strategy(max: usize) -> impl Strategy<Value = Mac> {
    (any::<u64>(), 2..=max, 2..=max, 2..=max, any::<bool>()).prop_map(
        |(seed, n1, n2, ny, sparse)| {
            families::random_mac(&mut ChaCha8Rng::seed_from_u64(seed), n1, n2, ny, sparse)
        },
    )
}

fn input_for(mac: &Mac, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (
        families::random_row(&mut rng, mac.x1().len(), true),
        families::random_row(&mut rng, mac.x2().len(), true),
    )
}

fn random_cl_input(mac: &Mac, k: usize, seed: u64) -> CLInput {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let pu = families::random_row(&mut rng, k, true);
    let a = (0..k)
        .map(|_| families::random_row(&mut rng, mac.x1().len(), true))
        .collect();
    let b = (0..k)
        .map(|_| families::random_row(&mut rng, mac.x2().len(), true))
        .collect();
    CLInput::new(
        Pmf::new(u.clone(), pu).unwrap(),
        ConditionalPmf::new(u.clone(), mac.x1().to_vec(), a).unwrap(),
        ConditionalPmf::new(u, mac.x2().to_vec(), b).unwrap(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chain_rules(j in joint3()) {
        let h_ab = j.entropy_of_axes(&[0, 1]);
        let lhs = j.entropy_of_axes(&[0]) + j.conditional_entropy(&[1], &[0]);
        prop_assert!((h_ab - lhs).abs() < 1e-9);
        let i_a_bc = j.mi(&[0], &[1, 2]);
        let split = j.mi(&[0], &[2]) + j.cmi(&[0], &[1], &[2]);
        prop_assert!((i_a_bc - split).abs() < 1e-9);
    }

    #[test]
    fn measures_are_nonnegative_and_symmetric(j in joint3()) {
        prop_assert!(j.mi(&[0], &[1]) >= 0.0);
        prop_assert!(j.cmi(&[0], &[1], &[2]) >= 0.0);
        prop_assert!(j.conditional_entropy(&[0], &[1, 2]) >= 0.0);
        prop_assert!((j.mi(&[0], &[1]) - j.mi(&[1], &[0])).abs() < 1e-12);
        let p = j.marginal(&[0]);
        let q = j.marginal(&[1]);
        if p.table().len() == q.table().len() {
            prop_assert!(kl_of(p.table(), q.table()) >= 0.0);
        }
    }

    #[test]
    fn independent_copy_structure(mac in mac_strategy(3), seed in any::<u64>()) {
        let (p1, p2) = input_for(&mac, seed);
        let input = mac.product_input(&p1, &p2).unwrap();
        let one = mac.independent_copy_joint(&input, 1).unwrap();
        let two = mac.independent_copy_joint(&input, 2).unwrap();
        for (a, b) in two.marginal(&[0, 1, 2]).table().iter().zip(one.table()) {
            prop_assert!((a - b).abs() < 1e-12);
        }
        let h_copy = two.conditional_entropy(&[3], &[0, 1, 2]);
        let h_noise = two.conditional_entropy(&[2], &[0, 1]);
        prop_assert!((h_copy - h_noise).abs() < 1e-9);

        // p(y,y'|x1,x2) factorizes exactly
        let ny = mac.y().len();
        let n2 = mac.x2().len();
        for a in 0..mac.x1().len() {
            for b in 0..n2 {
                let w = input.table()[a * n2 + b];
                if w == 0.0 { continue; }
                let row = mac.row(a, b);
                for y in 0..ny {
                    for y2 in 0..ny {
                        let cell = two.table()[((a * n2 + b) * ny + y) * ny + y2];
                        prop_assert_eq!(cell, w * row[y] * row[y2]);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_erasure_preserves_measures(mac in mac_strategy(3), seed in any::<u64>()) {
        let ext = mac.erasure_extend(&ErasureSpec::fresh_for(&mac, 0.0).unwrap()).unwrap();
        let (p1, p2) = input_for(&mac, seed);
        let j = mac.independent_copy_joint(&mac.product_input(&p1, &p2).unwrap(), 1).unwrap();
        let k = ext.independent_copy_joint(&ext.product_input(&p1, &p2).unwrap(), 1).unwrap();
        prop_assert!((j.mi(&[0, 1], &[2]) - k.mi(&[0, 1], &[2])).abs() < 1e-12);
        prop_assert!((j.cmi(&[0], &[2], &[1]) - k.cmi(&[0], &[2], &[1])).abs() < 1e-12);
    }

    #[test]
    fn channel_files_round_trip(mac in mac_strategy(4)) {
        let doc = ChannelDoc { mac, group: None };
        let back = parse_channel_doc(&channel_doc_to_json(&doc)).unwrap();
        prop_assert_eq!(back.mac.x1(), doc.mac.x1());
        prop_assert_eq!(back.mac.y(), doc.mac.y());
        for (a, b) in back.mac.flat().iter().zip(doc.mac.flat()) {
            prop_assert!((a - b).abs() <= 1e-15);
        }
    }

    #[test]
    fn pentagon_routes_agree_and_sum_rate_ignores_u(
        mac in mac_strategy(3), k in 1usize..=3, seed in any::<u64>()
    ) {
        let q = random_cl_input(&mac, k, seed);
        let fast = cl_pentagon(&mac, &q).unwrap();
        let slow = cl_pentagon_via_joint(&mac, &q).unwrap();
        prop_assert!((fast.b1 - slow.b1).abs() < 1e-9);
        prop_assert!((fast.b2 - slow.b2).abs() < 1e-9);
        prop_assert!((fast.bsum - slow.bsum).abs() < 1e-9);
        let j = cl_joint(&mac, &q).unwrap();
        prop_assert!((j.mi(&[0, 1, 2], &[3]) - j.mi(&[1, 2], &[3])).abs() < 1e-9);
    }

    #[test]
    fn canonical_classes_match_partition_search(seed in any::<u64>()) {
        let (ch, support) = small_channel(seed);
        let fast = equivalence_classes(&ch, &support).unwrap().markov_ok;
        prop_assert_eq!(fast, brute_force_condition2(&ch, &support).unwrap());
    }

    #[test]
    fn additive_channels_satisfy_both_lemmas(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mac, g) = families::random_additive(&mut rng);
        prop_assert!(check_lemma1(&z_channel(&mac, &g)));
        for user in [User::One, User::Two] {
            let p = families::random_row(&mut rng, mac.alphabet(user).len(), true);
            let p = Pmf::new(mac.alphabet(user).to_vec(), p).unwrap();
            prop_assert!(check_lemma2(&mac, &g, user, &p).unwrap().max_spread < 1e-9);
        }
    }

    #[test]
    fn relay_slope_matches_finite_difference(mac in mac_strategy(3), user_two in any::<bool>()) {
        // dense rows keep the divergence term finite
        prop_assume!(mac.flat().iter().all(|&p| p > 0.0));
        let user = if user_two { User::Two } else { User::One };
        let sr = single_rate_capacity(&mac, user, DEFAULT_TOL);
        let xbar = mac.alphabet(user.other()).iter().find(|x| **x != sr.xk_star).unwrap().clone();
        let h = 1e-6;
        let c = cf_rate_curve(&mac, user, &sr.xk_star, &xbar, &sr.p_star, &[0.0, 2.0 * h]).unwrap();
        let fd = (c.rates[1] - c.rates[0]) / (2.0 * h);
        prop_assert!((fd - c.derivative_at_zero).abs() < 1e-3, "fd {} analytic {}", fd, c.derivative_at_zero);
    }
}

/// A channel with up to 5 inputs and 6 outputs, built so that exact class
/// structure (shared rows on disjoint output blocks) occurs often.
fn small_channel(seed: u64) -> (ConditionalPmf, Vec<String>) {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nz = rng.gen_range(1..=5);
    let ny = rng.gen_range(1..=6);
    let rows: Vec<Vec<f64>> = if rng.gen_bool(0.5) {
        (0..nz)
            .map(|_| families::random_row(&mut rng, ny, true))
            .collect()
    } else {
        let blocks = rng.gen_range(1..=ny.min(3));
        let block_of: Vec<usize> = (0..ny)
            .map(|y| {
                if y < blocks {
                    y
                } else {
                    rng.gen_range(0..blocks)
                }
            })
            .collect();
        let protos: Vec<Vec<f64>> = (0..blocks)
            .map(|b| {
                let mut r: Vec<f64> = (0..ny)
                    .map(|y| {
                        if block_of[y] == b {
                            0.05 + rng.gen::<f64>()
                        } else {
                            0.0
                        }
                    })
                    .collect();
                let s: f64 = r.iter().sum();
                r.iter_mut().for_each(|x| *x /= s);
                r
            })
            .collect();
        (0..nz)
            .map(|_| {
                let b = rng.gen_range(0..blocks);
                if rng.gen_bool(0.8) {
                    protos[b].clone()
                } else {
                    let mut r: Vec<f64> = (0..ny)
                        .map(|y| {
                            if block_of[y] == b {
                                0.05 + rng.gen::<f64>()
                            } else {
                                0.0
                            }
                        })
                        .collect();
                    let s: f64 = r.iter().sum();
                    r.iter_mut().for_each(|x| *x /= s);
                    r
                }
            })
            .collect()
    };
    let ch = ConditionalPmf::from_rows(rows).unwrap();
    let support: Vec<String> = ch
        .input_alphabet()
        .iter()
        .filter(|_| rng.gen_bool(0.8))
        .cloned()
        .collect();
    let support = if support.is_empty() {
        vec![ch.input_alphabet()[0].clone()]
    } else {
        support
    };
    (ch, support)
}

proptest! {
    // the frontier searches dominate runtime, so fewer cases
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn inner_bound_sits_inside_cut_set(mac in mac_strategy(3), seed in any::<u64>()) {
        let weights = [(1.0, 0.0), (1.0, 1.0), (0.3, 1.0), (0.0, 1.0)];
        let fr = cl_frontier(&mac, &weights, 2, 3, seed).unwrap();
        prop_assert!(fr.max_certificate_violation(&mac).unwrap() <= CERTIFY_TOL);
        for model in [FeedbackModel::PF, FeedbackModel::IF] {
            let outer = cutset_bounds(&mac, model, DEFAULT_TOL).pentagon();
            for p in &fr.points {
                prop_assert!(p.value <= outer.best_corner(p.weight).1 + 1e-6);
            }
        }
    }

    #[test]
    fn erasure_never_helps(seed in any::<u64>(), p in 0.0f64..0.9, dp in 0.0f64..0.1) {
        let base = families::random_mac(&mut ChaCha8Rng::seed_from_u64(seed), 2, 2, 3, true);
        let weights = [(1.0, 1.0), (1.0, 0.4)];
        let value = |q: f64| {
            let m = base.erasure_extend(&ErasureSpec::fresh_for(&base, q).unwrap()).unwrap();
            cl_frontier(&m, &weights, 3, 3, seed).unwrap()
        };
        let (lo, hi) = (value(p), value(p + dp));
        for (a, b) in lo.points.iter().zip(&hi.points) {
            prop_assert!(b.value <= a.value + 1e-6, "{} vs {}", b.value, a.value);
        }
    }
}

#[test]
fn entropy_of_point_mass_is_exactly_zero() {
    assert_eq!(entropy_of(&[0.0, 1.0, 0.0]), 0.0);
}
