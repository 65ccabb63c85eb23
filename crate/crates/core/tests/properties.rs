use std::path::PathBuf;
use std::sync::Arc;

use proptest::prelude::*;
use rdlab::cli::{Command, NormArgs, RunConfig, TrialArgs};
use rdlab::coeffalg::{CoeffOp, GroupAction, C64};
use rdlab::crossed::{format_element_file, parse_element_file, CpElement};
use rdlab::groups::{Group, GroupElement};
use rdlab::harness::{verdict, CoeffSampler, InequalityId, SupportSampler, Verdict};
use rdlab::repnorm::Method;

const GROUPS: [&str; 5] = ["free:2", "free:3", "zd:2", "zd:3", "fpc:2,3"];

fn group_and_words(max_len: usize) -> impl Strategy<Value = (Group, Vec<i8>, Vec<i8>, Vec<i8>)> {
    (0..GROUPS.len()).prop_flat_map(move |i| {
        let g = Group::parse(GROUPS[i]).unwrap();
        let r = g.rank() as i8;
        let letter = prop_oneof![(1..=r), (-r..=-1)];
        let word = proptest::collection::vec(letter, 0..=max_len);
        (Just(g), word.clone(), word.clone(), word)
    })
}

fn el(g: &Group, w: &[i8]) -> GroupElement {
    g.from_letters(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms((g, a, b, c) in group_and_words(8)) {
        let (a, b, c) = (el(&g, &a), el(&g, &b), el(&g, &c));
        let ab = g.multiply(&a, &b).unwrap();
        prop_assert_eq!(
            g.multiply(&ab, &c).unwrap(),
            g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap()
        );
        prop_assert!(g.multiply(&a, &g.inverse(&a)).unwrap().is_identity());
        prop_assert!(g.multiply(&g.inverse(&a), &a).unwrap().is_identity());
        prop_assert_eq!(g.multiply(&g.identity(), &a).unwrap(), a.clone());
        prop_assert_eq!(g.length(&g.inverse(&a)), g.length(&a));
        prop_assert!(g.length(&ab) <= g.length(&a) + g.length(&b));
        prop_assert_eq!(g.parse_element(&g.format_element(&a)).unwrap(), a);
    }

    #[test]
    fn cancellation_bounds((g, a, b, _c) in group_and_words(8)) {
        let (a, b) = (el(&g, &a), el(&g, &b));
        let p = g.cancellation_number(&a, &b).unwrap();
        let ab = g.length(&g.multiply(&a, &b).unwrap());
        prop_assert!(p <= a.len().min(b.len()));
        prop_assert!(2 * p <= a.len() + b.len() - ab);
        prop_assert!(a.len() + b.len() - ab < 2 * p + 2);
        if g.is_free() {
            prop_assert_eq!(ab, a.len() + b.len() - 2 * p);
        }
    }

    #[test]
    fn element_file_round_trip(
        (gi, entries) in (0..GROUPS.len(), proptest::collection::vec((0usize..30, -1e3f64..1e3, -1e3f64..1e3), 1..12))
    ) {
        let g = Group::parse(GROUPS[gi]).unwrap();
        let ctx = Arc::new(GroupAction::parse(&g, "trivial:2").unwrap());
        let ball = rdlab::SphereIndex::enumerate(&g, 3, 10_000).unwrap();
        let terms: Vec<(GroupElement, CoeffOp)> = entries
            .iter()
            .map(|&(i, re, im)| {
                let h = ball.elements()[i % ball.len()].clone();
                let z = C64::new(re, im);
                let a = CoeffOp::from_rows(2, &[z, C64::new(im, 0.0), C64::new(0.0, re / 3.0), z * z]).unwrap();
                (h, a)
            })
            .collect();
        let x = CpElement::from_terms(ctx.clone(), terms).unwrap();
        let text = format_element_file(&x);
        let back = parse_element_file(ctx, &text).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn verdict_is_one_sided(lhs in 0.0f64..1e6, rhs in 0.0f64..1e6) {
        let v = verdict(lhs, rhs);
        if lhs <= rhs {
            prop_assert_eq!(v, Verdict::Consistent);
        }
        if lhs > rhs * (1.0 + 1e-5) + 1e-5 {
            prop_assert_eq!(v, Verdict::Violation);
        }
    }
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![0.0f64..10.0, Just(1e-6), Just(0.1), Just(1.0 / 3.0)]
}

fn trial_args() -> impl Strategy<Value = TrialArgs> {
    let ids = proptest::sample::select(InequalityId::ALL.to_vec());
    let supports = prop_oneof![
        Just(None),
        Just(Some(SupportSampler::FullSphere)),
        (1usize..20).prop_map(|s| Some(SupportSampler::SphereSubset(s))),
        (1usize..20).prop_map(|s| Some(SupportSampler::BallSubset(s))),
    ];
    let coeffs = proptest::sample::select(vec![CoeffSampler::Gaussian, CoeffSampler::Unitary, CoeffSampler::RankOne]);
    (
        (ids, proptest::sample::select(GROUPS.to_vec()), 0usize..5, proptest::option::of(0usize..5)),
        (proptest::option::of(0usize..9), 0usize..100, any::<u64>(), coeffs, finite(), supports),
        (
            proptest::option::of(finite()),
            proptest::option::of(finite()),
            proptest::option::of(finite()),
            proptest::option::of(finite()),
            finite(),
        ),
        (proptest::option::of(0usize..20), 0usize..8, finite(), 1usize..60, 0usize..4, any::<bool>(), 1usize..6),
    )
        .prop_map(
            |(
                (id, group, k, l),
                (m, trials, seed, coeff, scale, support),
                (n_bound, big_m, c, s, lambda),
                (radius, slack, tol, krylov, pi_candidates, operator_diagnostic, j_radius),
            )| TrialArgs {
                id,
                group: group.to_string(),
                action: "trivial:1".into(),
                k,
                l,
                m,
                trials,
                seed,
                coeff,
                scale,
                support,
                n_bound,
                big_m,
                c,
                s,
                lambda,
                radius,
                slack,
                tol,
                krylov,
                pi_candidates,
                operator_diagnostic,
                j_radius,
            },
        )
}

fn configs() -> impl Strategy<Value = RunConfig> {
    let group = proptest::sample::select(GROUPS.to_vec()).prop_map(String::from);
    let command = prop_oneof![
        (group.clone(), 0usize..10).prop_map(|(group, radius)| Command::SphereCount { group, radius }),
        (group.clone(), 0usize..6, finite(), finite(), finite(), any::<bool>()).prop_map(
            |(group, radius, alpha, beta, gamma, shifted)| Command::Propj { group, radius, alpha, beta, gamma, shifted }
        ),
        (group.clone(), 0usize..6, finite(), finite())
            .prop_map(|(group, radius, mu, nu)| Command::Nsolutions { group, radius, mu, nu }),
        (group.clone(), 0usize..100, any::<u64>()).prop_map(|(group, samples, seed)| Command::ActionCheck {
            group,
            action: "perm:3:x1=(0 1 2)".into(),
            samples,
            seed
        }),
        (
            group.clone(),
            proptest::option::of(0usize..12),
            finite(),
            any::<bool>(),
            proptest::sample::select(vec![Method::Power, Method::Lanczos, Method::Dense]),
            0usize..4,
            1usize..60,
            1usize..10_000
        )
            .prop_map(|(group, radius, tol, dense, method, history, krylov, max_iter)| {
                Command::Norm(NormArgs {
                    group,
                    action: "trivial:2".into(),
                    element_file: PathBuf::from("dir/x y.el"),
                    radius,
                    tol,
                    dense,
                    method,
                    history,
                    krylov,
                    max_iter,
                })
            }),
        trial_args().prop_map(|t| if t.id.is_probe() { Command::Probe(t) } else { Command::Verify(t) }),
    ];
    (
        command,
        proptest::option::of(Just(PathBuf::from("out.jsonl"))),
        proptest::option::of(prop_oneof![Just(PathBuf::from("-")), Just(PathBuf::from("t.csv"))]),
        any::<bool>(),
        proptest::option::of(1usize..10_000_000),
    )
        .prop_map(|(command, out, csv, quiet, budget)| RunConfig { command, out, csv, quiet, budget })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn config_round_trip(cfg in configs()) {
        let argv = cfg.render();
        let back = RunConfig::parse_args(&argv).unwrap();
        prop_assert_eq!(&back, &cfg);
        let json = serde_json::to_string(&cfg).unwrap();
        prop_assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), cfg);
    }
}
