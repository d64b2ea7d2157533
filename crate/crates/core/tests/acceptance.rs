//! Acceptance suite: one PASS/FAIL line per criterion. All tolerances are
//! exact. Set `LINEFREE_SKIP_CENSUS=1` to skip the full plane-quartic census
//! (about a minute on one core).

mod common;

use std::collections::HashSet;
use std::time::Instant;

use common::{affine_vectors, eval, field, naive_count, random_form};
use linefree::analysis::{self, BoundStatus, KOrbit};
use linefree::bounds::{self, BoundValue};
use linefree::form::{HomogeneousForm, Restriction};
use linefree::gf::{FieldElement, FieldSpec};
use linefree::projgeom::{enumerate_hyperplanes, enumerate_points, ProjPoint};
use linefree::search::kernel::{PackedQuarticKernel, SpaceTables};
use linefree::search::{random_sweep, RunOptions, ScanTask, Space};
use linefree::verify;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pow(q: i128, k: u32) -> i128 {
    q.pow(k)
}

/// θ_q(s) from the closed form, written without the library.
fn theta_oracle(q: i128, s: i64) -> BoundValue {
    if s >= -1 {
        BoundValue::new(pow(q, (s + 1) as u32) - 1, q - 1)
    } else {
        let k = (-(s + 1)) as u32;
        BoundValue::new(1 - pow(q, k), pow(q, k) * (q - 1))
    }
}

fn c1_theta() -> Outcome {
    let mut cases = 0;
    for q in 2..=16i64 {
        for s in -3..=10i64 {
            let t = bounds::theta(q, s).map_err(|e| e.to_string())?;
            ensure(t == theta_oracle(q.into(), s), || format!("theta({q},{s}) = {t}"))?;
            let power = if s >= 0 {
                BoundValue::integer(pow(q.into(), s as u32))
            } else {
                BoundValue::new(1, pow(q.into(), (-s) as u32))
            };
            let prev = bounds::theta(q, s - 1).map_err(|e| e.to_string())?;
            ensure(t == power + prev, || format!("recursion fails at q={q} s={s}"))?;
            cases += 1;
        }
        ensure(bounds::theta(q, -1).unwrap() == BoundValue::integer(0), || {
            format!("theta({q},-1)")
        })?;
        ensure(bounds::theta(q, -2).unwrap() == BoundValue::new(-1, q.into()), || {
            format!("theta({q},-2)")
        })?;
    }
    Ok(format!("{cases} cases exact"))
}

fn c2_plane_agreement() -> Outcome {
    for q in 2..=16i64 {
        for d in 2..=16i64 {
            let main = bounds::main_bound(2, d, q).map_err(|e| e.to_string())?;
            let szik = bounds::sziklai_bound(d, q).map_err(|e| e.to_string())?;
            let oracle = i128::from((d - 1) * q + 1);
            ensure(main == oracle && szik == oracle, || {
                format!("d={d} q={q}: {main} {szik} {oracle}")
            })?;
        }
    }
    Ok("225 (d, q) pairs".into())
}

fn c3_induction() -> Outcome {
    let mut cases = 0;
    for q in [2i64, 3, 4, 5, 7, 8, 9] {
        for n in 3..=6i64 {
            for d in 2..=q + 1 {
                ensure(
                    bounds::induction_step_check(n, d, q).map_err(|e| e.to_string())?,
                    || format!("n={n} d={d} q={q}"),
                )?;
                // Integer recomputation: θ_q(k) for k >= 0 is a plain sum.
                let th = |k: i64| -> i128 { (0..=k).map(|i| pow(q.into(), i as u32)).sum() };
                let main = |n: i64| -> i128 {
                    let (d, q) = (i128::from(d), i128::from(q));
                    (d - 1) * (pow(q, (n - 1) as u32) + 1) + (d - 2) * (th(n - 3) - 1)
                };
                let delta = main(n - 1);
                let floor = (delta - 1).div_euclid(th(n - 2));
                ensure(floor == i128::from(d) - 2, || {
                    format!("floor term at n={n} d={d} q={q}")
                })?;
                ensure((delta - 1) * i128::from(q) + 1 + floor == main(n), || {
                    format!("chain at n={n} d={d} q={q}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} grid points"))
}

/// Point and hyperplane masks of P^n(F_q) built from affine vectors.
fn incidence_masks(k: &FieldSpec, n: usize) -> (usize, Vec<u32>) {
    let normalized = |v: &[FieldElement]| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_one());
    let pts: Vec<Vec<FieldElement>> = affine_vectors(k, n + 1).into_iter().filter(|v| normalized(v)).collect();
    let masks = pts
        .iter()
        .map(|h| {
            pts.iter().enumerate().fold(0u32, |m, (i, p)| {
                let dot = h.iter().zip(p).fold(k.zero(), |a, (&x, &y)| k.add(a, k.mul(x, y)));
                if dot.is_zero() {
                    m | 1 << i
                } else {
                    m
                }
            })
        })
        .collect();
    (pts.len(), masks)
}

fn c4_subset_oracle() -> Outcome {
    let mut total = 0u64;
    for (n, q) in [(2usize, 2u32), (3, 2), (2, 3)] {
        let k = field(q);
        let lib = analysis::oracle_subset_bound(n, &k).map_err(|e| e.to_string())?;
        ensure(lib.passed(), || format!("library oracle fails on P^{n}(F_{q})"))?;
        let (theta, masks) = incidence_masks(&k, n);
        for s in 0u32..1 << theta {
            let delta = masks.iter().map(|&h| (s & h).count_ones()).max().unwrap().max(1);
            let bound = bounds::subset_section_bound(delta.into(), n as i64, q.into()).unwrap();
            ensure(i128::from(s.count_ones()) <= bound, || {
                format!("P^{n}(F_{q}) subset {s:#x}")
            })?;
        }
        ensure(lib.subsets == 1 << theta, || "subset count".into())?;
        total += lib.subsets;
    }
    Ok(format!("{total} subsets, no violation"))
}

fn c5_k_facts() -> Outcome {
    let f4 = field(4);
    let k = HomogeneousForm::parse(analysis::K_TEXT, &f4).map_err(|e| e.to_string())?;
    ensure(naive_count(&k) == 14 && analysis::count_points(&k) == 14, || {
        "N_4(K) != 14".into()
    })?;
    let pts = enumerate_points(2, &f4);
    for p in &pts {
        let over_f2 = p.indices().iter().all(|&c| c < 2);
        let on_k = eval(&k, p.coords()).is_zero();
        ensure(on_k != over_f2, || format!("point {:?}", p.indices()))?;
    }
    // Lines as point sets spanned by pairs; q + 1 = 5 > 4 = d, so a line
    // lies on K exactly when its five points do.
    let mut lines: HashSet<Vec<usize>> = HashSet::new();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            let mut on: Vec<usize> = pts
                .iter()
                .enumerate()
                .filter(|(_, c)| {
                    let m = [a.coords(), b.coords(), c.coords()];
                    det3(&f4, m).is_zero()
                })
                .map(|(j, _)| j)
                .collect();
            on.sort();
            lines.insert(on);
        }
    }
    ensure(lines.len() == 21, || format!("{} lines", lines.len()))?;
    let zero: Vec<bool> = pts.iter().map(|p| eval(&k, p.coords()).is_zero()).collect();
    ensure(lines.iter().all(|l| l.iter().any(|&j| zero[j])), || {
        "a line misses K".into()
    })?;
    ensure(!lines.iter().any(|l| l.iter().all(|&j| zero[j])), || {
        "a line lies on K".into()
    })?;
    ensure(analysis::lines_on(&k).unwrap().is_empty(), || {
        "lines_on(K) nonempty".into()
    })?;
    Ok("N = 14, K(F_4) = P^2(F_4) minus P^2(F_2), all 21 lines meet K, none lies on it".into())
}

fn det3(k: &FieldSpec, m: [&[FieldElement]; 3]) -> FieldElement {
    let t = |a: usize, b: usize, c: usize| k.mul(k.mul(m[0][a], m[1][b]), m[2][c]);
    let pos = k.add(k.add(t(0, 1, 2), t(1, 2, 0)), t(2, 0, 1));
    let neg = k.add(k.add(t(2, 1, 0), t(0, 2, 1)), t(1, 0, 2));
    k.sub(pos, neg)
}

/// Whether some line joining two zeros of a quadric lies on it: for d = 2
/// and any q, q + 1 >= 3 points decide.
fn quadric_has_line(f: &HomogeneousForm, pts: &[ProjPoint]) -> bool {
    let k = f.field();
    let zeros: Vec<&ProjPoint> = pts.iter().filter(|p| eval(f, p.coords()).is_zero()).collect();
    zeros.iter().enumerate().any(|(i, a)| {
        zeros[i + 1..].iter().any(|b| {
            k.elements().into_iter().all(|t| {
                let x: Vec<FieldElement> = a
                    .coords()
                    .iter()
                    .zip(b.coords())
                    .map(|(&u, &v)| k.add(u, k.mul(t, v)))
                    .collect();
                eval(f, &x).is_zero()
            })
        })
    })
}

fn c6_elliptic_quadrics() -> Outcome {
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let k = field(q);
        let e = analysis::elliptic_quadric(&k);
        let n = naive_count(&e);
        let bound = bounds::main_bound(3, 2, q.into()).unwrap();
        ensure(
            n as i128 == i128::from(q * q + 1) && bound == i128::from(q * q + 1),
            || format!("q={q}: N={n}"),
        )?;
        ensure(!quadric_has_line(&e, &enumerate_points(3, &k)), || {
            format!("q={q}: contains a line")
        })?;
        let v = analysis::check_bound(&e).map_err(|x| x.to_string())?;
        ensure(v.status == BoundStatus::Attains && v.n_points == n, || {
            format!("q={q}: {v:?}")
        })?;
    }
    Ok("q in {2,3,4,5,7,8,9}: line-free, N = q^2 + 1 = bound".into())
}

fn c7_constants() -> Outcome {
    let c = verify::quartic_surface_constants()?;
    let (t3, t2) = (1 + 4 + 16 + 64, 1 + 4 + 16);
    ensure(
        14 * t3 + 1 == 1191 && (14 * t3 + 1) / (t2 + 2) == 51 && (14 * t3 + 1) % (t2 + 2) == 18,
        || "integer recomputation".into(),
    )?;
    Ok(c)
}

struct SmoothSample {
    form: HomogeneousForm,
    n: usize,
    sections: Vec<usize>,
    t: Vec<usize>,
}

/// `C^2 + x3 * G` with `C` an absolutely irreducible conic in x0, x1, x2
/// and `G` a cubic: the plane x3 = 0 cuts out the double conic.
fn double_conic_surface(rng: &mut ChaCha8Rng) -> HomogeneousForm {
    let f4 = field(4);
    let c = loop {
        let c = random_form(&f4, 3, 2, rng);
        if analysis::conic_is_absolutely_irreducible(&c).unwrap() {
            break HomogeneousForm::parse_in(&c.format(), &f4, 4).unwrap();
        }
    };
    let x3 = HomogeneousForm::parse_in("x3", &f4, 4).unwrap();
    let g = random_form(&f4, 4, 3, rng);
    c.mul(&c).unwrap().add(&x3.mul(&g).unwrap()).unwrap()
}

/// Line-free quartic surfaces over F_4 with every F_4-point nonsingular,
/// with section counts and t(H) recomputed from formal partials.
fn smooth_quartic_samples(count: usize, seed: u64, double_conic: bool) -> (Vec<SmoothSample>, usize) {
    let f4 = field(4);
    let pts = enumerate_points(3, &f4);
    let planes = enumerate_hyperplanes(3, &f4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut drawn = 0;
    while out.len() < count {
        drawn += 1;
        let g = if double_conic {
            double_conic_surface(&mut rng)
        } else {
            random_form(&f4, 4, 4, &mut rng)
        };
        let partials: Vec<_> = (0..4).map(|i| g.partial_derivative(i).unwrap()).collect();
        let zeros: Vec<&ProjPoint> = pts.iter().filter(|p| eval(&g, p.coords()).is_zero()).collect();
        let grads: Vec<Vec<FieldElement>> = zeros
            .iter()
            .map(|p| {
                partials
                    .iter()
                    .map(|d| match d {
                        linefree::form::Partial::Zero => f4.zero(),
                        linefree::form::Partial::Constant(c) => *c,
                        linefree::form::Partial::Form(h) => eval(h, p.coords()),
                    })
                    .collect()
            })
            .collect();
        if grads.iter().any(|gr| gr.iter().all(|x| x.is_zero())) {
            continue;
        }
        if !analysis::lines_on(&g).unwrap().is_empty() {
            continue;
        }
        let dot = |h: &[FieldElement], x: &[FieldElement]| {
            h.iter().zip(x).fold(f4.zero(), |a, (&u, &v)| f4.add(a, f4.mul(u, v)))
        };
        let sections = planes
            .iter()
            .map(|h| {
                zeros
                    .iter()
                    .filter(|p| dot(h.dual_coords(), p.coords()).is_zero())
                    .count()
            })
            .collect();
        // H = T_P exactly when the gradient is proportional to H's dual
        // coordinates.
        let t = planes
            .iter()
            .map(|h| {
                grads
                    .iter()
                    .filter(|gr| {
                        let lead = gr.iter().find(|x| !x.is_zero()).unwrap();
                        let inv = f4.inv(*lead).unwrap();
                        gr.iter().map(|&x| f4.mul(x, inv)).eq(h.dual_coords().iter().copied())
                    })
                    .count()
            })
            .collect();
        out.push(SmoothSample {
            n: zeros.len(),
            form: g,
            sections,
            t,
        });
    }
    (out, drawn)
}

const TABLE: [(usize, bool); 6] = [(14, false), (11, false), (10, false), (8, false), (6, false), (5, true)];

fn c8_c9_tangent_table(samples: &[SmoothSample], drawn: usize, targeted: usize) -> (Outcome, Outcome) {
    let f4 = field(4);
    let planes = enumerate_hyperplanes(3, &f4);
    let mut t5 = 0;
    let mut max_t = 0;
    let c8 = (|| {
        for s in samples {
            let prof = analysis::profile(&s.form).map_err(|e| e.to_string())?;
            let lib_t: Vec<usize> = prof.per_hyperplane.iter().map(|h| h.t).collect();
            let lib_sec: Vec<usize> = prof.per_hyperplane.iter().map(|h| h.section_count).collect();
            ensure(lib_t == s.t && lib_sec == s.sections, || {
                "profile disagrees with oracle".into()
            })?;
            let check = analysis::tangent_table_check(&s.form, &prof)
                .map_err(|e| e.to_string())?
                .ok_or("hypothesis unexpectedly fails")?;
            ensure(check.violations.is_empty(), || check.violations.join("; "))?;
            for (i, (&t, &sec)) in s.t.iter().zip(&s.sections).enumerate() {
                max_t = max_t.max(t);
                ensure(t <= 5, || format!("t = {t}"))?;
                let (max, exact) = TABLE[t];
                ensure(sec <= max && (!exact || sec == max), || {
                    format!("t = {t}, section {sec}")
                })?;
                if t == 5 {
                    t5 += 1;
                    let Restriction::Form(c) = s.form.restrict_to_hyperplane(&planes[i]).unwrap() else {
                        return Err("t = 5 plane is a component".into());
                    };
                    let root = c.is_perfect_square().unwrap().ok_or("t = 5 section is not a square")?;
                    ensure(root.mul(&root).unwrap() == c, || "root does not square back".into())?;
                    ensure(analysis::conic_is_absolutely_irreducible(&root).unwrap(), || {
                        "t = 5 root conic is reducible".into()
                    })?;
                }
            }
        }
        // Every targeted surface has x3 = 0 as a double-conic plane.
        let x3 = planes.iter().position(|h| h.indices() == [0, 0, 0, 1]).unwrap();
        ensure(samples[samples.len() - targeted..].iter().all(|s| s.t[x3] == 5), || {
            "double-conic plane without t = 5".into()
        })?;
        Ok(format!(
            "{} surfaces ({} random, {targeted} with a double-conic plane; {drawn} drawn), max t = {max_t}, {t5} planes with t = 5",
            samples.len(),
            samples.len() - targeted
        ))
    })();
    let c9 = (|| {
        for s in samples {
            let total: usize = s.sections.iter().sum();
            ensure(total == 21 * s.n, || format!("sum of sections {total} != 21 * {}", s.n))?;
            let mut hist = [0usize; 6];
            for &t in &s.t {
                hist[t.min(5)] += 1;
            }
            let weighted: usize = hist.iter().enumerate().map(|(j, &c)| j * c).sum();
            ensure(weighted == s.n, || format!("sum j n_j = {weighted} != N = {}", s.n))?;
            ensure(hist.iter().sum::<usize>() == 85, || "sum n_j != 85".into())?;
        }
        Ok(format!(
            "{} surfaces: sum of sections = 21N, sum j n_j = N",
            samples.len()
        ))
    })();
    (c8, c9)
}

fn c10_singular() -> Outcome {
    let f4 = field(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let (mut found, mut drawn, mut max_n) = (0, 0, 0);
    while found < 300 {
        drawn += 1;
        let g = random_form(&f4, 4, 4, &mut rng);
        if analysis::singular_points_fq(&g).is_empty() || !analysis::lines_on(&g).unwrap().is_empty() {
            continue;
        }
        let n = naive_count(&g);
        ensure(n <= 43, || format!("N = {n} for {g}"))?;
        ensure(analysis::singular_case_bound_check(&g) == Ok(true), || {
            format!("library disagrees on {g}")
        })?;
        max_n = max_n.max(n);
        found += 1;
    }
    Ok(format!(
        "{found} line-free singular quartics ({drawn} drawn), max N = {max_n} <= 43"
    ))
}

fn c11_sweep() -> Outcome {
    let mut lines = Vec::new();
    let mut cases: Vec<(Space, u64)> = Vec::new();
    for q in [2u32, 3, 4] {
        for d in [3u32, 4] {
            let (p, e) = if q == 4 { (2, 2) } else { (q, 1) };
            cases.push((Space { n: 3, d, p, e }, 100_000));
        }
    }
    for d in [2u32, 3] {
        cases.push((Space { n: 4, d, p: 2, e: 1 }, 10_000));
    }
    for (i, (space, samples)) in cases.into_iter().enumerate() {
        let task = ScanTask::random(space, 0xacce_0011 + i as u64, samples).map_err(|e| e.to_string())?;
        let out = random_sweep(&task, &RunOptions::default()).map_err(|e| e.to_string())?;
        let s = &out.summary;
        ensure(s.counts.total == samples, || "sample count".into())?;
        ensure(s.counts.exceeds_unflagged == 0, || {
            format!("{space:?}: {:?}", s.discrepancies)
        })?;
        let max = s.max_n_line_free.unwrap_or(0);
        ensure(max as i128 <= s.bound, || {
            format!("{space:?}: max N {max} > {}", s.bound)
        })?;
        ensure(out.records.iter().all(|r| r.verify(space).unwrap()), || {
            "record fails re-derivation".into()
        })?;
        lines.push(format!(
            "(n={},d={},q={}) {} line-free, max N {} / bound {}",
            space.n,
            space.d,
            space.q(),
            s.counts.line_free,
            max,
            s.bound
        ));
    }
    Ok(lines.join("; "))
}

fn c12a_kernel_agreement() -> Outcome {
    let packed = PackedQuarticKernel::new();
    let scalar = SpaceTables::new(Space::PLANE_QUARTICS_F4).map_err(|e| e.to_string())?;
    let f4 = field(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0x12a);
    let mut coeffs = [0u32; 15];
    for i in 0..1_000_000u32 {
        loop {
            coeffs.iter_mut().for_each(|c| *c = rng.gen_range(0..4));
            if coeffs.iter().any(|&c| c != 0) {
                break;
            }
        }
        let a = packed.classify(&coeffs);
        let b = scalar.classify_vector(&coeffs);
        ensure(a == b, || format!("{coeffs:?}: packed {a:?} scalar {b:?}"))?;
        if i % 1000 == 0 {
            let g = HomogeneousForm::from_coefficient_vector(&f4, 3, 4, &coeffs).unwrap();
            ensure(naive_count(&g) == a.n_points, || format!("{coeffs:?}: naive count"))?;
        }
    }
    Ok("10^6 random candidates agree (packed vs scalar), 1000 also against naive counting".into())
}

fn c12_census() -> Outcome {
    let task = ScanTask::census();
    let out = linefree::search::run(&task, &RunOptions::default()).map_err(|e| e.to_string())?;
    let s = &out.summary;
    let orbit = KOrbit::shared().len() as u64;
    ensure(s.counts.total == 357_913_941, || format!("total {}", s.counts.total))?;
    ensure(s.max_n_line_free == Some(14), || {
        format!("max N {:?}", s.max_n_line_free)
    })?;
    ensure(s.counts.exceeds_unflagged == 0, || {
        format!("discrepancies {:?}", s.discrepancies)
    })?;
    ensure(s.histogram[14] == orbit && s.counts.k_equivalent == orbit, || {
        format!("N=14 tally {} vs orbit {orbit}", s.histogram[14])
    })?;
    let n14: Vec<_> = out.records.iter().filter(|r| r.n_points == 14).collect();
    ensure(n14.len() as u64 == orbit && n14.iter().all(|r| r.k_equivalent), || {
        "N=14 records".into()
    })?;
    Ok(format!(
        "{} candidates, {} line-free, max N = 14, N=14 tally {} = |orbit of K|, self-checks {}",
        s.counts.total, s.counts.line_free, s.histogram[14], s.counts.self_checks
    ))
}

fn report(id: &str, name: &str, t0: Instant, outcome: Outcome, failures: &mut usize) {
    let secs = t0.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("PASS {id:>3} {name} [{secs:.1}s]: {detail}"),
        Err(detail) => {
            *failures += 1;
            println!("FAIL {id:>3} {name} [{secs:.1}s]: {detail}");
        }
    }
}

fn main() {
    // `cargo test -- --list` and filters go to every target; only run on a
    // plain invocation or when "acceptance" is named.
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let filters: Vec<&String> = args.iter().filter(|a| !a.starts_with('-')).collect();
    if !filters.is_empty() && !filters.iter().any(|f| "acceptance".contains(f.as_str())) {
        return;
    }
    let mut failures = 0;
    macro_rules! crit {
        ($id:expr, $name:expr, $body:expr) => {{
            let t0 = Instant::now();
            let outcome = $body;
            report($id, $name, t0, outcome, &mut failures);
        }};
    }
    crit!("1", "theta identities", c1_theta());
    crit!("2", "plane bound agreement", c2_plane_agreement());
    crit!("3", "induction arithmetic", c3_induction());
    crit!("4", "subset bound oracle", c4_subset_oracle());
    crit!("5", "exceptional quartic K", c5_k_facts());
    crit!("6", "elliptic quadric extremality", c6_elliptic_quadrics());
    crit!("7", "quartic surface constants", c7_constants());
    let t0 = Instant::now();
    let (mut samples, mut drawn) = smooth_quartic_samples(2000, 0x5eed_0008, false);
    let (targeted, drawn_t) = smooth_quartic_samples(200, 0x5eed_0108, true);
    let n_targeted = targeted.len();
    samples.extend(targeted);
    drawn += drawn_t;
    let (c8, c9) = c8_c9_tangent_table(&samples, drawn, n_targeted);
    report("8", "tangent-plane table sweep", t0, c8, &mut failures);
    report("9", "double-count identities", t0, c9, &mut failures);
    crit!("10", "singular-point bound", c10_singular());
    crit!("11", "bound falsification sweep", c11_sweep());
    crit!("12a", "census kernel agreement", c12a_kernel_agreement());
    if std::env::var_os("LINEFREE_SKIP_CENSUS").is_some() {
        println!("SKIP  12 plane-quartic census (LINEFREE_SKIP_CENSUS set)");
    } else {
        crit!("12", "plane-quartic census", c12_census());
    }
    if failures > 0 {
        println!("{failures} criterion check(s) failed");
        std::process::exit(1);
    }
}
