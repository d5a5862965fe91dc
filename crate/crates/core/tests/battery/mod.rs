//! Shared test battery: fixture loading, seeded random model generation,
//! and the exact operator/cohomology identity checks run by both the
//! property suite and the acceptance suite.

#![allow(dead_code)]

use nilsym::algebra::LieAlgebra;
use nilsym::basis::Basis;
use nilsym::cohomology::{
    betti, cohomology, delta_bc, delta_full, hard_lefschetz, harmonic, harmonic_via_laplacian,
    lefschetz_degree_check, Theory,
};
use nilsym::form::Form;
use nilsym::manifest::{load_model, Model};
use nilsym::matrix::RatMat;
use nilsym::operators::Context;
use nilsym::rational::{rat, Rational};
use nilsym::subspace::Subspace;
use nilsym::symplectic::{AlmostComplexStructure, MetricData, SymplecticStructure};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FIXTURES: [&str; 6] = [
    "s3_nilmanifold.json",
    "kodaira.json",
    "filiform.json",
    "iwasawa_underlying.json",
    "darboux_torus4.json",
    "darboux_torus6.json",
];

pub fn load_fixture(name: &str) -> Model {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name);
    let src =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading fixture {name}: {e}"));
    match load_model(&src) {
        Ok(model) => model,
        Err(e) => panic!("fixture {name} failed to load: {e}"),
    }
}

pub fn fixture_contexts() -> Vec<(String, Context)> {
    FIXTURES
        .iter()
        .map(|name| (name.to_string(), load_fixture(name).context))
        .collect()
}

/// Random nilpotent algebra: de^1 = de^2 = 0 and each later de^i is a
/// random closed 2-form on the span of the earlier coframe slots, so
/// d^2 = 0 holds by construction and the filtration forces nilpotency.
pub fn random_nilpotent_algebra(rng: &mut ChaCha8Rng, dim: usize) -> LieAlgebra {
    let basis = Basis::new(dim);
    let mut de: Vec<Form> = (0..dim).map(|_| Form::zero(dim, 2)).collect();
    for i in 3..=dim {
        let partial = LieAlgebra::new(dim, de.clone()).expect("partial algebra is consistent");
        let candidates: Vec<&nilsym::index_set::IndexSet> = basis
            .monomials(2)
            .iter()
            .filter(|s| s.max_index().map_or(false, |m| (m as usize) < i))
            .collect();
        let rows: Vec<Vec<Rational>> = candidates
            .iter()
            .map(|s| basis.to_coords(&partial.d(&Form::basis(dim, s.indices()))))
            .collect();
        let map = RatMat::from_rows(basis.size(3), rows);
        let closed = Subspace::kernel_of(&map);
        if closed.dim() == 0 {
            continue;
        }
        let mut pick = Form::zero(dim, 2);
        for _ in 0..4 {
            let mut acc = Form::zero(dim, 2);
            for r in 0..closed.basis_rows().rows() {
                let c: i64 = rng.gen_range(-1..=1);
                if c == 0 {
                    continue;
                }
                let mut combo = Form::zero(dim, 2);
                for (j, coeff) in closed.basis_rows().row(r).iter().enumerate() {
                    if !coeff.is_zero() {
                        combo = combo.add(&Form::term(dim, candidates[j].indices(), coeff.clone()));
                    }
                }
                acc = acc.add(&combo.scale(&rat(c)));
            }
            if !acc.is_zero() {
                pick = acc;
                break;
            }
        }
        de[i - 1] = pick;
    }
    LieAlgebra::new(dim, de).expect("constructed algebra satisfies d^2 = 0")
}

/// Random closed nondegenerate 2-form for the algebra, or None if the
/// retry budget runs out (the caller then redraws the algebra).
pub fn random_symplectic(
    rng: &mut ChaCha8Rng,
    algebra: &LieAlgebra,
) -> Option<SymplecticStructure> {
    let basis = Basis::new(algebra.dim());
    let closed = Subspace::kernel_of(&algebra.d_matrix(&basis, 2));
    for _ in 0..60 {
        let mut coords = vec![Rational::zero(); basis.size(2)];
        for r in 0..closed.basis_rows().rows() {
            let c: i64 = rng.gen_range(-1..=1);
            if c == 0 {
                continue;
            }
            for (j, coeff) in closed.basis_rows().row(r).iter().enumerate() {
                coords[j] += coeff * rat(c);
            }
        }
        let omega = basis.from_coords(2, &coords);
        if omega.is_zero() {
            continue;
        }
        if let Ok(sym) = SymplecticStructure::new(algebra, omega) {
            return Some(sym);
        }
    }
    None
}

pub fn standard_pairs(dim: usize) -> Vec<[u8; 2]> {
    (0..dim / 2)
        .map(|a| [2 * a as u8 + 1, 2 * a as u8 + 2])
        .collect()
}

/// Random full context: algebra + symplectic form + the almost-complex
/// structure read off a Darboux coframe (always compatible) + its metric.
pub fn random_context(rng: &mut ChaCha8Rng, dim: usize) -> Context {
    for _ in 0..50 {
        let algebra = random_nilpotent_algebra(rng, dim);
        let Some(sym) = random_symplectic(rng, &algebra) else {
            continue;
        };
        let basis = Basis::new(dim);
        let coframe_mat = sym.darboux_coframe();
        let coframe: Vec<Form> = (0..dim)
            .map(|i| basis.from_coords(1, coframe_mat.row(i)))
            .collect();
        let j = AlmostComplexStructure::from_coframe(&coframe, &standard_pairs(dim))
            .expect("Darboux coframe is a valid frame");
        let metric = MetricData::from_triple(&sym, &j).expect("Darboux triple is compatible");
        return Context::new(algebra, sym, Some(j), Some(metric)).expect("validated context");
    }
    panic!("no random symplectic pair found in dimension {dim}");
}

/// Twenty seeded random models: twelve in dimension 4, eight in
/// dimension 6. Deterministic across runs.
pub fn random_contexts() -> Vec<(String, Context)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
    let mut out = Vec::new();
    for case in 0..12 {
        out.push((format!("random-dim4-{case}"), random_context(&mut rng, 4)));
    }
    for case in 0..8 {
        out.push((format!("random-dim6-{case}"), random_context(&mut rng, 6)));
    }
    out
}

fn mat_is_identity(m: &RatMat) -> bool {
    *m == RatMat::identity(m.rows())
}

/// d^2 = 0, (d^Lambda)^2 = 0, the two anticommute, both stars square
/// correctly, the two routes to d^Lambda agree, and the dual Lefschetz
/// operator is the metric adjoint of L.
pub fn check_operator_identities(label: &str, ctx: &Context) {
    let n2 = ctx.dim() as isize;
    for k in 0..=n2 {
        let dd = ctx.d_mat(k).mul(&ctx.d_mat(k + 1));
        assert!(dd.is_zero_matrix(), "{label}: d^2 != 0 in degree {k}");

        let ll = ctx.d_lambda_mat(k).mul(&ctx.d_lambda_mat(k - 1));
        assert!(ll.is_zero_matrix(), "{label}: (d^L)^2 != 0 in degree {k}");

        let a = ctx.d_mat(k).mul(&ctx.d_lambda_mat(k + 1));
        let b = ctx.d_lambda_mat(k).mul(&ctx.d_mat(k - 1));
        assert!(
            a.add(&b).is_zero_matrix(),
            "{label}: d d^L + d^L d != 0 in degree {k}"
        );

        let star2 = ctx.sym_star_mat(k).mul(&ctx.sym_star_mat(n2 - k));
        assert!(
            mat_is_identity(&star2),
            "{label}: symplectic star is not an involution in degree {k}"
        );

        let hodge2 = ctx.hodge_star_mat(k).mul(&ctx.hodge_star_mat(n2 - k));
        if k % 2 == 0 {
            assert!(
                mat_is_identity(&hodge2),
                "{label}: Hodge star squared != +1 in even degree {k}"
            );
        } else {
            assert!(
                hodge2.add(&RatMat::identity(ctx.size(k))).is_zero_matrix(),
                "{label}: Hodge star squared != -1 in odd degree {k}"
            );
        }

        for set in ctx.basis().monomials(k as usize) {
            let f = Form::basis(ctx.dim(), set.indices());
            assert_eq!(
                ctx.d_lambda(&f),
                ctx.d_lambda_via_star(&f),
                "{label}: two d^L routes disagree on a degree-{k} monomial"
            );
        }

        if k >= 2 {
            let adj = ctx.adjoint_of(&ctx.lef_mat(k - 2), k - 2, k);
            assert_eq!(
                ctx.dual_lef_mat(k),
                adj,
                "{label}: dual Lefschetz is not the adjoint of L in degree {k}"
            );
        }
    }
}

/// Dimension-level identities of the four theories: Betti symmetry, d^L
/// duality with de Rham, Bott-Chern/Aeppli duality, the delta relations,
/// the degree-2 Lefschetz splitting, and agreement of the three
/// characterizations of the hard Lefschetz property.
pub fn check_cohomology_identities(label: &str, ctx: &Context) {
    let n2 = ctx.dim();
    let b: Vec<usize> = (0..=n2).map(|k| betti(ctx, k)).collect();
    for k in 0..=n2 {
        assert_eq!(b[k], b[n2 - k], "{label}: Betti numbers not symmetric at {k}");

        let hdl = cohomology(ctx, Theory::DLambda, k).dim();
        assert_eq!(hdl, b[n2 - k], "{label}: h_dL({k}) != b({})", n2 - k);

        let hbc = cohomology(ctx, Theory::BottChern, k).dim();
        let ha_dual = cohomology(ctx, Theory::Aeppli, n2 - k).dim();
        assert_eq!(hbc, ha_dual, "{label}: h_BC({k}) != h_A({})", n2 - k);

        assert_eq!(
            delta_full(ctx, k),
            2 * delta_bc(ctx, k),
            "{label}: delta_full != 2 delta_bc in degree {k}"
        );
        assert!(b[k] <= hbc, "{label}: b_{k} = {} exceeds h_BC = {hbc}", b[k]);
    }
    assert_eq!(delta_bc(ctx, 1), 0, "{label}: delta_bc(1) != 0");

    let split = lefschetz_degree_check(ctx, 2);
    assert!(
        split.direct && split.spans,
        "{label}: degree-2 Lefschetz splitting failed (sum {} of {})",
        split.sum_dim,
        split.total_dim
    );

    let report = hard_lefschetz(ctx);
    let deltas_vanish = (0..=n2).all(|k| delta_bc(ctx, k) == 0);
    let bc_equals_betti = (0..=n2).all(|k| cohomology(ctx, Theory::BottChern, k).dim() == b[k]);
    assert_eq!(
        report.holds, deltas_vanish,
        "{label}: hard Lefschetz verdict disagrees with delta_bc vanishing"
    );
    assert_eq!(
        report.holds, bc_equals_betti,
        "{label}: hard Lefschetz verdict disagrees with h_BC = Betti"
    );
}

/// Harmonic spaces computed by kernel intersections agree in dimension
/// with the quotient groups; optionally also as subspaces with the
/// Laplacian kernels (fourth-order for Bott-Chern/Aeppli, so reserved
/// for the fixtures).
pub fn check_harmonic_agreement(label: &str, ctx: &Context, with_laplacian: bool) {
    assert!(ctx.has_metric(), "{label}: harmonic checks need a metric");
    for theory in Theory::all() {
        for k in 0..=ctx.dim() {
            let h = harmonic(ctx, theory, k);
            let q = cohomology(ctx, theory, k);
            assert_eq!(
                h.dim(),
                q.dim(),
                "{label}: harmonic/quotient dimension mismatch for {} in degree {k}",
                theory.key()
            );
            if with_laplacian {
                let lap = harmonic_via_laplacian(ctx, theory, k);
                assert_eq!(
                    h.space(),
                    lap.space(),
                    "{label}: harmonic space differs from Laplacian kernel for {} in degree {k}",
                    theory.key()
                );
            }
        }
    }
}
