use super::*;
use crate::form::Restriction;
use crate::projgeom::{enumerate_hyperplanes, ProjectiveMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(q: u32) -> Arc<FieldSpec> {
    FieldSpec::for_order(q).unwrap()
}

fn random_form(f: &Arc<FieldSpec>, n_vars: usize, d: u32, rng: &mut ChaCha8Rng) -> HomogeneousForm {
    let len = crate::form::monomials(n_vars, d).len();
    loop {
        let v: Vec<u32> = (0..len).map(|_| rng.gen_range(0..f.q())).collect();
        if let Ok(g) = HomogeneousForm::from_coefficient_vector(f, n_vars, d, &v) {
            return g;
        }
    }
}

#[test]
fn k_is_the_exception() {
    let f4 = field(4);
    let k = k_form(&f4).unwrap();
    assert_eq!(count_points(&k), 14);
    assert!(lines_on(&k).unwrap().is_empty());
    let v = check_bound(&k).unwrap();
    assert_eq!(
        (v.n_points, v.bound, v.status, v.exception_flag),
        (14, 13, BoundStatus::Exceeds, true)
    );
    assert!(!v.is_falsification());
}

#[test]
fn k_orbit_has_expected_size() {
    // |PGL(3,4)| / |PGL(3,2)| = 60480 / 168
    assert_eq!(KOrbit::shared().len(), 360);
    let f4 = field(4);
    let k = k_form(&f4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let m = ProjectiveMap::random(&f4, 3, &mut rng);
        let img = k.apply_map(&m).unwrap();
        assert!(is_equivalent_to_k(&img).unwrap());
        assert_eq!(count_points(&img), 14);
    }
    let fermat = HomogeneousForm::parse("x0^4 + x1^4 + x2^4", &f4).unwrap();
    assert!(!is_equivalent_to_k(&fermat).unwrap());
}

#[test]
fn k_orbit_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.bin");
    let orbit = KOrbit::shared();
    orbit.save(&path).unwrap();
    assert_eq!(&KOrbit::load(&path).unwrap(), orbit);
    std::fs::write(&path, b"LFKO\x02\0\0\0\0\0\0\0").unwrap();
    assert!(KOrbit::load(&path).is_err());
}

#[test]
fn elliptic_quadrics_attain() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let f = field(q);
        let e = elliptic_quadric(&f);
        let v = check_bound(&e).unwrap();
        assert_eq!(v.n_points as u32, q * q + 1, "q={q}");
        assert_eq!(v.status, BoundStatus::Attains);
        assert!(singular_points_fq(&e).is_empty());
    }
}

#[test]
fn lines_on_matches_point_oracle() {
    // With q + 1 > d, a line lies on X exactly when all its F_q-points do.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (q, n_vars, d) in [(4, 4, 3), (5, 4, 3), (3, 3, 2), (4, 3, 3)] {
        let f = field(q);
        let space = ProjectiveSpace::shared(n_vars - 1, &f);
        for _ in 0..25 {
            let g = random_form(&f, n_vars, d, &mut rng);
            let zero = zero_flags(&g);
            let naive = space
                .line_points()
                .iter()
                .filter(|pts| pts.iter().all(|&p| zero[p as usize]))
                .count();
            assert_eq!(lines_on(&g).unwrap().len(), naive);
        }
    }
}

#[test]
fn lines_on_needs_more_than_points() {
    // On x2 = 0 the restriction s^2*t + s*t^2 vanishes at all three
    // F_2-points without being the zero form.
    let f2 = field(2);
    let g = HomogeneousForm::parse("x0^2*x1 + x0*x1^2 + x2^3", &f2).unwrap();
    let zero = zero_flags(&g);
    let space = ProjectiveSpace::shared(2, &f2);
    let all_points_on = space
        .line_points()
        .iter()
        .filter(|pts| pts.iter().all(|&p| zero[p as usize]))
        .count();
    assert!(all_points_on >= 1);
    assert!(lines_on(&g).unwrap().is_empty());
}

#[test]
fn tangent_hyperplane_errors() {
    let f3 = field(3);
    let g = HomogeneousForm::parse("x0*x1 + x2^2", &f3).unwrap();
    let off = ProjPoint::from_indices(&f3, &[1, 1, 0]).unwrap();
    assert_eq!(tangent_hyperplane(&g, &off), Err(AnalysisError::NotOnHypersurface));
    let on = ProjPoint::from_indices(&f3, &[1, 0, 0]).unwrap();
    let h = tangent_hyperplane(&g, &on).unwrap();
    assert_eq!(h.indices(), vec![0, 1, 0]);
    let cone = HomogeneousForm::parse_in("x0*x1", &f3, 3).unwrap();
    let vertex = ProjPoint::from_indices(&f3, &[0, 0, 1]).unwrap();
    assert_eq!(tangent_hyperplane(&cone, &vertex), Err(AnalysisError::SingularPoint));
}

#[test]
fn section_methods_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (q, n_vars, d) in [(4, 4, 4), (3, 4, 3), (2, 5, 3), (5, 3, 4)] {
        let f = field(q);
        for _ in 0..5 {
            let g = random_form(&f, n_vars, d, &mut rng);
            assert_eq!(
                section_counts(&g, SectionMethod::Incidence),
                section_counts(&g, SectionMethod::Restriction)
            );
        }
    }
}

#[test]
fn profile_double_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f4 = field(4);
    for _ in 0..20 {
        let g = random_form(&f4, 4, 4, &mut rng);
        let prof = profile(&g).unwrap();
        assert!(prof.n_histogram.len() >= 6);
        let smooth = prof.n_points - prof.singular_points.len();
        assert_eq!(prof.weighted_t_total(), smooth);
    }
}

#[test]
fn tangent_point_is_singular_on_section() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f4 = field(4);
    let mut checked = 0;
    while checked < 200 {
        let g = random_form(&f4, 4, 4, &mut rng);
        for p in rational_points(&g) {
            let Ok(h) = tangent_hyperplane(&g, &p) else { continue };
            let y = hyperplane_coordinates(&f4, &h, &p).unwrap();
            assert_eq!(hyperplane_point(&f4, &h, &y), p);
            match g.restrict_to_hyperplane(&h).unwrap() {
                Restriction::Component => {}
                Restriction::Form(c) => assert!(singular_points_fq(&c).contains(&y)),
            }
            checked += 1;
        }
    }
}

#[test]
fn conic_irreducibility() {
    let f4 = field(4);
    let conic = |t: &str| HomogeneousForm::parse_in(t, &f4, 3).unwrap();
    assert!(conic_is_absolutely_irreducible(&conic("x0*x2 + x1^2")).unwrap());
    assert!(conic_is_absolutely_irreducible(&conic("x0^2 + x0*x1 + w*x1^2 + x2^2 + x0*x2")).unwrap());
    assert!(!conic_is_absolutely_irreducible(&conic("x0*x1")).unwrap());
    assert!(!conic_is_absolutely_irreducible(&conic("x0^2")).unwrap());
    // Two lines conjugate over F_16, meeting in (0:0:1).
    assert!(!conic_is_absolutely_irreducible(&conic("x0^2 + x0*x1 + w*x1^2")).unwrap());
    assert!(conic_is_absolutely_irreducible(&conic("x0*x1*x2 + x0^3")).is_err());
}

#[test]
fn check_bound_rejects_lines() {
    let f2 = field(2);
    let plane_pair = HomogeneousForm::parse("x0*x1 + x2*x3", &f2).unwrap();
    assert!(matches!(check_bound(&plane_pair), Err(AnalysisError::NotLineFree(_))));
    let plane = HomogeneousForm::parse("x0", &f2).unwrap();
    assert!(check_bound(&plane).is_err());
}

#[test]
fn subset_oracle_small_spaces() {
    let out = oracle_subset_bound(2, &field(2)).unwrap();
    assert_eq!(out.subsets, 128);
    assert!(out.passed());
    assert!(oracle_subset_bound(2, &field(3)).unwrap().passed());
    assert!(oracle_subset_bound(3, &field(2)).unwrap().passed());
    assert!(matches!(
        oracle_subset_bound(2, &field(4)),
        Err(AnalysisError::OracleTooLarge { .. })
    ));
}

#[test]
fn max_section_examples() {
    let f2 = field(2);
    let pts = crate::projgeom::enumerate_points(2, &f2);
    assert_eq!(max_section(&pts, 2, &f2), 3);
    assert_eq!(max_section(&pts[..1], 2, &f2), 1);
    assert_eq!(max_section(&[], 2, &f2), 0);
}

#[test]
fn singular_case_check() {
    let f4 = field(4);
    // The cone over K is singular at its vertex and full of lines.
    let cone = HomogeneousForm::parse_in(K_TEXT, &f4, 4).unwrap();
    assert!(!singular_points_fq(&cone).is_empty());
    assert_eq!(count_points(&cone), 14 * 4 + 1);
    assert!(matches!(
        singular_case_bound_check(&cone),
        Err(AnalysisError::NotLineFree(_))
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut found = 0;
    while found < 10 {
        let g = random_form(&f4, 4, 4, &mut rng);
        if singular_points_fq(&g).is_empty() || !lines_on(&g).unwrap().is_empty() {
            continue;
        }
        assert!(singular_case_bound_check(&g).unwrap());
        found += 1;
    }
}

#[test]
fn hyperplane_count_matches_geometry() {
    let f3 = field(3);
    assert_eq!(enumerate_hyperplanes(3, &f3).len(), point_count(3, 3));
}
