use physio_rec_core::learning::{log_likelihood_gradient, softmax};
use physio_rec_core::recommend::ari_from_features;
use physio_rec_core::sim::{simulate, SimConfig};
use physio_rec_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit() -> impl Strategy<Value = f64> {
    0.0..=1.0f64
}

fn pc_strategy() -> impl Strategy<Value = ConditionVector> {
    prop::array::uniform6(unit()).prop_map(|v| ConditionVector::new(v).unwrap())
}

fn w_strategy() -> impl Strategy<Value = WeightMatrix> {
    prop::array::uniform6(prop::array::uniform5(-10.0..10.0f64))
        .prop_map(|rows| WeightMatrix::new(rows).unwrap())
}

fn channel_strategy() -> impl Strategy<Value = Channel> {
    prop::sample::select(Channel::ALL.to_vec())
}

fn sample_strategy(t_range: impl Strategy<Value = i64>) -> impl Strategy<Value = SensorSample> {
    (t_range, channel_strategy(), unit()).prop_map(|(t, ch, u)| {
        let v = match ch {
            Channel::HeartRate => 20.0 + 230.0 * u,
            Channel::AccelMagnitude => 15.0 * u,
            Channel::SkinConductance => 30.0 * u,
            Channel::FeedingGesture => (u > 0.5) as u8 as f64,
            Channel::SleepInterval => 30_000.0 * u,
            Channel::AlcoholProxy => u,
        };
        SensorSample::new(t, ch, v).unwrap()
    })
}

fn hr_features(mean: f64) -> WindowedFeatures {
    let mut f = WindowedFeatures::empty(10_000, WindowSpec::default());
    f.channels[Channel::HeartRate.index()] = Some(ChannelStats::constant(mean, 1));
    f
}

proptest! {
    #[test]
    fn window_sum_equals_mean_times_count(
        mut samples in prop::collection::vec(sample_strategy(0i64..2000), 0..60),
        t_now in 0i64..2500,
    ) {
        sensor::sort_samples(&mut samples);
        let f = window(&samples, WindowSpec::new(600).unwrap(), t_now).unwrap();
        for stats in f.channels.iter().flatten() {
            prop_assert!(stats.count > 0);
            prop_assert!(stats.min <= stats.mean && stats.mean <= stats.max);
            let expect = stats.mean * stats.count as f64;
            prop_assert!((stats.sum - expect).abs() <= 1e-9 * stats.sum.abs().max(1e-300));
        }
    }

    #[test]
    fn window_ignores_samples_outside(
        inside in prop::collection::vec(sample_strategy(1401i64..=2000), 0..30),
        before in prop::collection::vec(sample_strategy(0i64..=1400), 0..30),
        after in prop::collection::vec(sample_strategy(2001i64..3000), 0..30),
    ) {
        let spec = WindowSpec::new(600).unwrap();
        let mut base = inside.clone();
        sensor::sort_samples(&mut base);
        let mut with_after = base.clone();
        with_after.extend(after);
        sensor::sort_samples(&mut with_after);
        let mut with_before = before;
        with_before.extend(base.clone());
        sensor::sort_samples(&mut with_before);

        let f0 = window(&base, spec, 2000).unwrap();
        // samples after t_now change nothing at all
        prop_assert_eq!(&window(&with_after, spec, 2000).unwrap(), &f0);
        // samples before the window leave every windowed aggregate untouched
        prop_assert_eq!(window(&with_before, spec, 2000).unwrap().channels, f0.channels);
    }

    #[test]
    fn inference_output_in_unit_box(
        hr in prop::option::of(-1e6..1e6f64),
        acc in prop::option::of(-1e6..1e6f64),
        sc in prop::option::of(-1e6..1e6f64),
        alc in prop::option::of(-1e3..1e3f64),
        sleep in prop::option::of(0.0..1e7f64),
        gap in prop::option::of(0i64..10_000_000),
        history in prop::option::of(pc_strategy()),
    ) {
        let mut f = WindowedFeatures::empty(20_000_000, WindowSpec::default());
        for (ch, v) in [(Channel::HeartRate, hr), (Channel::AccelMagnitude, acc),
                        (Channel::SkinConductance, sc), (Channel::AlcoholProxy, alc)] {
            f.channels[ch.index()] = v.map(|m| ChannelStats::constant(m, 2));
        }
        f.sleep_last_day = sleep;
        f.last_feeding_gesture = gap.map(|g| 20_000_000 - g);
        let pc = infer_conditions(&f, history.as_ref(), &InferenceParams::default()).unwrap();
        for v in pc.as_array() {
            prop_assert!(v.is_finite() && (0.0..=1.0).contains(v));
        }
    }

    #[test]
    fn active_monotone_in_heart_rate(a in 20.0..250.0f64, b in 20.0..250.0f64) {
        let p = InferenceParams::default();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let x = infer_conditions(&hr_features(lo), None, &p).unwrap();
        let y = infer_conditions(&hr_features(hi), None, &p).unwrap();
        prop_assert!(x[Condition::Active] <= y[Condition::Active]);
        prop_assert_eq!(x[Condition::Active] + x[Condition::Relaxed], 1.0);
    }

    #[test]
    fn hunger_and_tiredness_monotone(g1 in 0i64..50_000, g2 in 0i64..50_000,
                                     s1 in 0.0..60_000f64, s2 in 0.0..60_000f64) {
        let p = InferenceParams::default();
        let score = |gap: i64, sleep: f64| {
            let mut f = WindowedFeatures::empty(100_000, WindowSpec::default());
            f.last_feeding_gesture = Some(100_000 - gap);
            f.sleep_last_day = Some(sleep);
            infer_conditions(&f, None, &p).unwrap()
        };
        let (glo, ghi) = (g1.min(g2), g1.max(g2));
        let (slo, shi) = (s1.min(s2), s1.max(s2));
        prop_assert!(score(glo, 0.0)[Condition::Hungry] <= score(ghi, 0.0)[Condition::Hungry]);
        prop_assert!(score(0, slo)[Condition::Tired] >= score(0, shi)[Condition::Tired]);
    }

    #[test]
    fn smoothing_is_idempotent_at_fixed_point(alc in unit(), beta in unit()) {
        let mut f = WindowedFeatures::empty(1000, WindowSpec::default());
        f.channels[Channel::AlcoholProxy.index()] = Some(ChannelStats::constant(alc, 1));
        let p = InferenceParams { smoothing: beta, ..Default::default() };
        let raw = infer_conditions(&f, None, &InferenceParams { smoothing: 1.0, ..p }).unwrap();
        let out = infer_conditions(&f, Some(&raw), &p).unwrap();
        prop_assert!((out[Condition::Drunk] - raw[Condition::Drunk]).abs() <= 1e-15);
    }

    #[test]
    fn ari_is_linear(pc in pc_strategy(), w in w_strategy(), alpha in 0.0..20.0f64) {
        let base = compute_ari(&pc, &w);
        let scaled = ari_from_features(&pc.as_array().map(|x| alpha * x), &w);
        for j in 0..5 {
            prop_assert!((scaled[j] - alpha * base.0[j]).abs() <= 1e-12 * (1.0 + alpha * 60.0));
        }
    }

    #[test]
    fn ari_is_additive(a in prop::array::uniform6(-5.0..5.0f64),
                       b in prop::array::uniform6(-5.0..5.0f64), w in w_strategy()) {
        let sum: [f64; 6] = std::array::from_fn(|i| a[i] + b[i]);
        let lhs = ari_from_features(&sum, &w);
        let (ra, rb) = (ari_from_features(&a, &w), ari_from_features(&b, &w));
        for j in 0..5 {
            prop_assert!((lhs[j] - (ra[j] + rb[j])).abs() <= 1e-12 * 600.0);
        }
    }

    #[test]
    fn ari_monotone_response(pc in pc_strategy(), w in w_strategy(), row in 0usize..6, bump in 0.0..1.0f64) {
        let mut raised = *pc.as_array();
        raised[row] += bump;
        let before = compute_ari(&pc, &w);
        let after = ari_from_features(&raised, &w);
        for j in 0..5 {
            let wij = w.rows()[row][j];
            if wij > 0.0 { prop_assert!(after[j] >= before.0[j]); }
            if wij < 0.0 { prop_assert!(after[j] <= before.0[j]); }
        }
    }

    #[test]
    fn rank_items_sorted_and_filtered(
        venues in prop::collection::vec((0usize..5, unit(), unit()), 0..30),
        k in 1usize..10,
        cat in 0usize..5,
    ) {
        let mut prefs = UserPreferences::new();
        let catalog: Vec<Venue> = venues.iter().enumerate().map(|(i, (c, q, aff))| {
            let id = format!("v{i:03}");
            prefs.set(id.clone(), *aff).unwrap();
            Venue::new(id, "x", ActivityCategory::ALL[*c], *q).unwrap()
        }).collect();
        let category = ActivityCategory::ALL[cat];
        let ranked = rank_items(category, &catalog, &prefs, k);
        prop_assert!(ranked.len() <= k);
        prop_assert_eq!(ranked.len(), k.min(catalog.iter().filter(|v| v.category == category).count()));
        prop_assert!(ranked.iter().all(|r| r.venue.category == category));
        prop_assert!(ranked.windows(2).all(|p| p[0].score >= p[1].score));
    }

    #[test]
    fn update_stays_bounded(w in w_strategy(), pc in pc_strategy(), c in 0usize..5, lr in 0.0..100.0f64) {
        let p = LearningParams { learning_rate: lr, ..Default::default() };
        let e = FeedbackEvent { pc, chosen: ActivityCategory::ALL[c], timestamp: 0 };
        prop_assert!(update(&w, &e, &p).max_abs() <= p.w_max);
    }
}

// Independent log-likelihood for the finite-difference oracle.
fn oracle_log_lik(w: &[[f64; 5]; 6], pc: &[f64; 6], chosen: usize) -> f64 {
    let mut logits = [0.0f64; 5];
    for j in 0..5 {
        for i in 0..6 {
            logits[j] += pc[i] * w[i][j];
        }
    }
    let total: f64 = logits.iter().map(|z| z.exp()).sum();
    logits[chosen] - total.ln()
}

#[test]
fn gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let eps = 1e-6;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let rows: [[f64; 5]; 6] = std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(-3.0..3.0)));
        let pc: [f64; 6] = std::array::from_fn(|_| rng.random::<f64>());
        let chosen = rng.random_range(0..5);
        let w = WeightMatrix::new(rows).unwrap();
        let g = log_likelihood_gradient(&w, &ConditionVector::new(pc).unwrap(), ActivityCategory::ALL[chosen]);
        for i in 0..6 {
            for j in 0..5 {
                let mut up = rows;
                let mut down = rows;
                up[i][j] += eps;
                down[i][j] -= eps;
                let fd = (oracle_log_lik(&up, &pc, chosen) - oracle_log_lik(&down, &pc, chosen)) / (2.0 * eps);
                worst = worst.max((fd - g[i][j]).abs());
            }
        }
    }
    assert!(worst <= 1e-5, "max deviation {worst}");
}

#[test]
fn uniform_weights_give_uniform_choices() {
    let pc = ConditionVector::new([0.3, 0.7, 0.2, 0.9, 0.1, 0.5]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let n = 10_000;
    let mut counts = [0usize; 5];
    for _ in 0..n {
        counts[sample_choice(&pc, &WeightMatrix::ZERO, 0.5, &mut rng).index()] += 1;
    }
    for c in counts {
        assert!((c as f64 / n as f64 - 0.2).abs() <= 0.02, "{counts:?}");
    }
}

#[test]
fn choice_frequencies_track_softmax() {
    let cfg = SimConfig::default();
    let pc = ConditionVector::new([0.6, 0.4, 0.3, 0.2, 0.7, 0.5]).unwrap();
    let tau = cfg.temperature;
    let q = softmax(&compute_ari(&pc, &cfg.w_true).0.map(|z| z / tau));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 20_000;
    let mut counts = [0usize; 5];
    for _ in 0..n {
        counts[sample_choice(&pc, &cfg.w_true, tau, &mut rng).index()] += 1;
    }
    let bound = 3.0 * (0.25 / n as f64).sqrt();
    for j in 0..5 {
        assert!((counts[j] as f64 / n as f64 - q[j]).abs() <= bound, "{j}: {counts:?} vs {q:?}");
    }
}

#[test]
fn tiny_temperature_always_picks_argmax() {
    let w = SimConfig::default().w_true;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let v: [f64; 6] = std::array::from_fn(|_| rng.random::<f64>());
        let pc = ConditionVector::new(v).unwrap();
        let best = select_category(&compute_ari(&pc, &w)).unwrap();
        for _ in 0..50 {
            assert_eq!(sample_choice(&pc, &w, 1e-6, &mut rng), best);
        }
    }
}

#[test]
fn negated_policy_agreement_matches_enumeration() {
    let w = SimConfig::default().w_true;
    let neg = w.scaled(-1.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut pcs = Vec::new();
    while pcs.len() < 500 {
        let v: [f64; 6] = std::array::from_fn(|_| rng.random::<f64>());
        let a = ari_from_features(&v, &w);
        let mut sorted = a;
        sorted.sort_by(f64::total_cmp);
        // unique maximum and distinct minimum
        if sorted[4] > sorted[3] && sorted[0] < sorted[1] {
            pcs.push(ConditionVector::new(v).unwrap());
        }
    }
    let expected = pcs
        .iter()
        .filter(|pc| {
            let a = ari_from_features(pc.as_array(), &w);
            let argmax = (0..5).fold(0, |b, j| if a[j] > a[b] { j } else { b });
            let argmin = (0..5).fold(0, |b, j| if a[j] < a[b] { j } else { b });
            argmax == argmin
        })
        .count() as f64
        / pcs.len() as f64;
    assert_eq!(evaluate_policy(&neg, &w, &pcs).unwrap(), expected);
    assert_eq!(expected, 0.0);
}

#[test]
fn simulation_is_bit_reproducible() {
    let cfg = SimConfig { n_steps: 300, n_tourists: 3, ..Default::default() };
    let a = simulate(&cfg, &InferenceParams::default(), WindowSpec::default()).unwrap();
    let b = simulate(&cfg, &InferenceParams::default(), WindowSpec::default()).unwrap();
    assert_eq!(a, b);
    for tourist in 0..3 {
        let ts: Vec<i64> = a.iter().filter(|s| s.tourist == tourist).map(|s| s.timestamp).collect();
        assert!(ts.windows(2).all(|p| p[0] < p[1]));
    }
}
