use helixlab::*;
use std::sync::Arc;

fn main() {
    let cfg = NumericConfig::default();
    let h3 = 1.0 / 3.0_f64.sqrt();
    let hyp = HelixHypothesis::new(h3, h3, h3, 1e-9).unwrap();
    let profile = ThetaProfile::linear(0.5, -0.02);
    let gen = generate_general_helix(&hyp, &profile, (0.0, 10.0), 4096, &cfg).unwrap();
    let fit = SampledCurve::from_uniform(gen.s[0], gen.s[1] - gen.s[0], gen.positions.clone())
        .unwrap();
    let samples: Vec<FrenetSample> = (0..gen.s.len())
        .map(|i| {
            let mut x = frenet::frenet_at_param(&fit, gen.s[i], &cfg).unwrap();
            x.s = gen.s[i];
            x
        })
        .collect();
    let series = lancret_series(&samples, &cfg).unwrap();
    let r = general_residual(&series, &samples, &hyp);
    println!("general residual rms = {:.3e}, max = {:.3e}", numeric::rms(&r), numeric::max_abs(&r));
    println!(
        "kappa range: {:.4} .. {:.4}",
        samples.iter().map(|x| x.kappa).fold(f64::INFINITY, f64::min),
        samples.iter().map(|x| x.kappa).fold(0.0, f64::max)
    );
    println!(
        "tau range: {:.4} .. {:.4}",
        samples.iter().map(|x| x.tau).fold(f64::INFINITY, f64::min),
        samples.iter().map(|x| x.tau).fold(0.0, f64::max)
    );
    // flipped variants to spot a sign error
    for (label, a, b, c) in [
        ("(a,-b,-c)", h3, -h3, -h3),
        ("(-a,b,c)", -h3, h3, h3),
        ("(a,b,-c)", h3, h3, -h3),
        ("(a,-b,c)", h3, -h3, h3),
    ] {
        let alt = HelixHypothesis::new(a, b, c, 1e-9).unwrap();
        let r = general_residual(&series, &samples, &alt);
        println!("{label}: rms = {:.3e}", numeric::rms(&r));
    }
    // th4 relation against the axis e3
    let st = slope_and_theta(&samples, Vec3::z(), Some(&hyp), &cfg).unwrap();
    let rr = st.relation_residual.unwrap();
    println!("th4 relation residual rms = {:.3e}", numeric::rms(&rr));
    println!("theta(s) sample: {:.4} {:.4} {:.4}", st.theta[0], st.theta[2048], st.theta[4095]);
    println!("prescribed theta: {:.4} {:.4} {:.4}", 0.5, 0.5 - 0.02 * 5.0, 0.5 - 0.02 * 10.0);

    // perturbed double ripple general score
    let c = Arc::new(
        AnalyticCurve::circular_helix(3.0, 4.0, (0.0, 4.0 * std::f64::consts::PI)).unwrap(),
    );
    let map = arclength::build_arclength_map(c.clone(), 512, &cfg).unwrap();
    let mut samples = frenet_series(c.as_ref(), &map, 1024, &cfg).unwrap();
    for x in &mut samples {
        x.tau *= 1.0 + 0.05 * (0.7 * x.s).sin();
        x.kappa *= 1.0 + 0.05 * (0.9 * x.s).cos();
    }
    let fit2 = estimate_hypothesis(&samples, &cfg).unwrap();
    println!(
        "double-perturbed: abc = {:?} score = {:.3e}",
        fit2.hypothesis.components(),
        fit2.score
    );
}
