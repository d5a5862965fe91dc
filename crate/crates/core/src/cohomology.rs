//! Cohomology groups, harmonic spaces, and the diagnostic subspaces
//! derived from them.
//!
//! Groups are stored as (cocycles, boundaries, representatives): the
//! representatives are rows inside the cocycle space forming a transversal
//! of the boundaries, so `dim = representatives.rows()`, and any cocycle
//! can be expressed in class coordinates against them.

use crate::form::Form;
use crate::matrix::RatMat;
use crate::operators::Context;
pub use crate::operators::Theory;
use crate::rational::Rational;
use crate::subspace::{class_coordinates, quotient_representatives, Subspace};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    cocycles: Subspace,
    boundaries: Subspace,
    representatives: RatMat,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.rows()
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn boundaries(&self) -> &Subspace {
        &self.boundaries
    }

    pub fn representatives(&self) -> &RatMat {
        &self.representatives
    }

    pub fn representative_forms(&self, ctx: &Context) -> Vec<Form> {
        (0..self.representatives.rows())
            .map(|i| ctx.basis().from_coords(self.degree, self.representatives.row(i)))
            .collect()
    }

    /// Class coordinates of a cocycle; None when the vector does not even
    /// represent a class (not in cocycles + boundaries).
    pub fn class_coords(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        class_coordinates(v, &self.representatives, &self.boundaries)
    }

    /// Cocycle form representing the class with the given coordinates.
    pub fn form_of_class(&self, ctx: &Context, coords: &[Rational]) -> Form {
        assert_eq!(coords.len(), self.dim());
        let mut acc = vec![Rational::zero(); self.representatives.cols()];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..self.representatives.cols() {
                let delta = c * self.representatives.at(i, j);
                acc[j] = &acc[j] + &delta;
            }
        }
        ctx.basis().from_coords(self.degree, &acc)
    }
}

/// The (cocycle, boundary) pair of the chosen theory in degree k.
fn spaces(ctx: &Context, theory: Theory, k: usize) -> (Subspace, Subspace) {
    assert!(k <= ctx.dim(), "degree {k} out of range");
    let k = k as isize;
    match theory {
        Theory::DeRham => (
            Subspace::kernel_of(&ctx.d_mat(k)),
            Subspace::image_of(&ctx.d_mat(k - 1)),
        ),
        Theory::DLambda => (
            Subspace::kernel_of(&ctx.d_lambda_mat(k)),
            Subspace::image_of(&ctx.d_lambda_mat(k + 1)),
        ),
        Theory::BottChern => (
            Subspace::kernel_of(&ctx.d_mat(k)).intersect(&Subspace::kernel_of(&ctx.d_lambda_mat(k))),
            Subspace::image_of(&ctx.dd_lambda_mat(k)),
        ),
        Theory::Aeppli => (
            Subspace::kernel_of(&ctx.dd_lambda_mat(k)),
            Subspace::image_of(&ctx.d_mat(k - 1))
                .sum(&Subspace::image_of(&ctx.d_lambda_mat(k + 1))),
        ),
    }
}

pub fn cohomology(ctx: &Context, theory: Theory, k: usize) -> CohomologyGroup {
    let (cocycles, boundaries) = spaces(ctx, theory, k);
    debug_assert!(boundaries.is_subspace_of(&cocycles));
    let representatives = quotient_representatives(&cocycles, &boundaries);
    CohomologyGroup {
        degree: k,
        cocycles,
        boundaries,
        representatives,
    }
}

pub fn betti(ctx: &Context, k: usize) -> usize {
    cohomology(ctx, Theory::DeRham, k).dim()
}

#[derive(Clone, Debug)]
pub struct HarmonicSpace {
    degree: usize,
    space: Subspace,
}

impl HarmonicSpace {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn forms(&self, ctx: &Context) -> Vec<Form> {
        let rows = self.space.basis_rows();
        (0..rows.rows())
            .map(|i| ctx.basis().from_coords(self.degree, rows.row(i)))
            .collect()
    }
}

/// Harmonic space by the kernel-intersection characterization. Needs
/// metric data for the adjoint conditions.
pub fn harmonic(ctx: &Context, theory: Theory, k: usize) -> HarmonicSpace {
    assert!(k <= ctx.dim(), "degree {k} out of range");
    let ki = k as isize;
    let space = match theory {
        Theory::DeRham => Subspace::kernel_of(&ctx.d_mat(ki))
            .intersect(&Subspace::kernel_of(&ctx.d_adj_mat(ki))),
        Theory::DLambda => Subspace::kernel_of(&ctx.d_lambda_mat(ki))
            .intersect(&Subspace::kernel_of(&ctx.d_lambda_adj_mat(ki))),
        Theory::BottChern => Subspace::kernel_of(&ctx.d_mat(ki))
            .intersect(&Subspace::kernel_of(&ctx.d_lambda_mat(ki)))
            .intersect(&Subspace::kernel_of(&ctx.dd_lambda_adj_mat(ki))),
        Theory::Aeppli => Subspace::kernel_of(&ctx.dd_lambda_mat(ki))
            .intersect(&Subspace::kernel_of(&ctx.d_adj_mat(ki)))
            .intersect(&Subspace::kernel_of(&ctx.d_lambda_adj_mat(ki))),
    };
    HarmonicSpace { degree: k, space }
}

/// Same space as the kernel of the corresponding Laplacian; the two
/// routes must agree, which the property suite checks.
pub fn harmonic_via_laplacian(ctx: &Context, theory: Theory, k: usize) -> HarmonicSpace {
    assert!(k <= ctx.dim(), "degree {k} out of range");
    HarmonicSpace {
        degree: k,
        space: Subspace::kernel_of(&ctx.laplacian(theory, k as isize)),
    }
}

/// Matrix of wedging r copies of omega, from degree `src`.
pub fn lef_power_mat(ctx: &Context, src: usize, r: usize) -> RatMat {
    let mut m = RatMat::identity(ctx.size(src as isize));
    let mut deg = src as isize;
    for _ in 0..r {
        m = m.mul(&ctx.lef_mat(deg));
        deg += 2;
    }
    m
}

#[derive(Clone, Debug)]
pub struct LefschetzPower {
    pub power: usize,
    pub source_degree: usize,
    pub target_degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    pub isomorphism: bool,
}

/// The induced map [alpha] -> [omega^r ^ alpha] from degree n-r to n+r on
/// the cohomology of d. Its kernel is measured by pulling the boundary
/// space of the target back through the power map.
pub fn lefschetz_power(ctx: &Context, r: usize) -> LefschetzPower {
    let n = ctx.half_dim();
    assert!(r <= n, "power {r} exceeds half-dimension {n}");
    let src = n - r;
    let tgt = n + r;
    let source = cohomology(ctx, Theory::DeRham, src);
    let target = cohomology(ctx, Theory::DeRham, tgt);
    let m = lef_power_mat(ctx, src, r);
    let to_residual = m.mul(&target.boundaries().residual_map());
    let pullback = Subspace::kernel_of(&to_residual);
    let kernel_classes = source.cocycles().intersect(&pullback);
    debug_assert!(source.boundaries().is_subspace_of(&kernel_classes));
    let rank = source.cocycles().dim() - kernel_classes.dim();
    let injective = kernel_classes.dim() == source.boundaries().dim();
    let surjective = rank == target.dim();
    LefschetzPower {
        power: r,
        source_degree: src,
        target_degree: tgt,
        source_dim: source.dim(),
        target_dim: target.dim(),
        rank,
        injective,
        surjective,
        isomorphism: injective && surjective,
    }
}

#[derive(Clone, Debug)]
pub struct LefschetzReport {
    pub powers: Vec<LefschetzPower>,
    pub holds: bool,
}

pub fn hard_lefschetz(ctx: &Context) -> LefschetzReport {
    let powers: Vec<LefschetzPower> = (0..=ctx.half_dim())
        .map(|r| lefschetz_power(ctx, r))
        .collect();
    let holds = powers.iter().all(|p| p.isomorphism);
    LefschetzReport { powers, holds }
}

/// h_bc(k) - b(k): zero in every degree exactly when the hard-Lefschetz
/// map condition holds.
pub fn delta_bc(ctx: &Context, k: usize) -> i64 {
    cohomology(ctx, Theory::BottChern, k).dim() as i64 - betti(ctx, k) as i64
}

/// h_bc(k) + h_a(k) - 2 b(k).
pub fn delta_full(ctx: &Context, k: usize) -> i64 {
    let bc = cohomology(ctx, Theory::BottChern, k).dim() as i64;
    let a = cohomology(ctx, Theory::Aeppli, k).dim() as i64;
    bc + a - 2 * betti(ctx, k) as i64
}

#[derive(Clone, Debug)]
pub struct LefschetzSubgroup {
    pub r: usize,
    pub s: usize,
    pub degree: usize,
    pub dim: usize,
    /// Subspace of class coordinates inside the degree-(2r+s) group.
    pub classes: Subspace,
}

/// Classes of omega^r ^ (primitive closed-after-wedging s-forms) inside
/// the degree 2r+s group of d.
pub fn lefschetz_subgroup(ctx: &Context, r: usize, s: usize) -> LefschetzSubgroup {
    let degree = 2 * r + s;
    assert!(degree <= ctx.dim(), "degree {degree} out of range");
    let group = cohomology(ctx, Theory::DeRham, degree);
    let primitive = Subspace::kernel_of(&ctx.dual_lef_mat(s as isize));
    let m = lef_power_mat(ctx, s, r);
    let closed_after = Subspace::kernel_of(&m.mul(&ctx.d_mat(degree as isize)));
    let source = primitive.intersect(&closed_after);
    let image_rows = source.basis_rows().mul(&m);
    let mut class_rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..image_rows.rows() {
        let coords = group
            .class_coords(image_rows.row(i))
            .expect("image of the power map consists of cocycles");
        class_rows.push(coords);
    }
    let classes = Subspace::from_rows(
        group.dim(),
        RatMat::from_rows(group.dim(), class_rows),
    );
    LefschetzSubgroup {
        r,
        s,
        degree,
        dim: classes.dim(),
        classes,
    }
}

#[derive(Clone, Debug)]
pub struct LefschetzDegreeCheck {
    pub degree: usize,
    pub groups: Vec<LefschetzSubgroup>,
    pub sum_dim: usize,
    pub total_dim: usize,
    pub direct: bool,
    pub spans: bool,
}

/// All subgroups with 2r+s = k (s running over primitive degrees), and
/// whether they decompose the whole degree-k group.
pub fn lefschetz_degree_check(ctx: &Context, k: usize) -> LefschetzDegreeCheck {
    let n = ctx.half_dim();
    let total_dim = betti(ctx, k);
    let mut groups = Vec::new();
    for r in 0..=(k / 2) {
        let s = k - 2 * r;
        if s > n {
            continue;
        }
        groups.push(lefschetz_subgroup(ctx, r, s));
    }
    let ambient = total_dim;
    let mut sum = Subspace::zero(ambient);
    let mut dim_sum = 0usize;
    for g in &groups {
        sum = sum.sum(&g.classes);
        dim_sum += g.dim;
    }
    LefschetzDegreeCheck {
        degree: k,
        sum_dim: dim_sum,
        total_dim,
        direct: sum.dim() == dim_sum,
        spans: sum.dim() == total_dim,
        groups,
    }
}

#[derive(Clone, Debug)]
pub struct JSubgroups {
    pub plus: LabeledClassSpace,
    pub minus: LabeledClassSpace,
    pub total_dim: usize,
    pub direct: bool,
    pub spans: bool,
}

#[derive(Clone, Debug)]
pub struct LabeledClassSpace {
    pub dim: usize,
    pub classes: Subspace,
    pub representative_forms: Vec<Form>,
}

fn classes_of_cocycle_space(
    ctx: &Context,
    group: &CohomologyGroup,
    space: &Subspace,
) -> LabeledClassSpace {
    let rows = space.basis_rows();
    let mut class_rows: Vec<Vec<Rational>> = Vec::new();
    for i in 0..rows.rows() {
        class_rows.push(
            group
                .class_coords(rows.row(i))
                .expect("space must consist of cocycles"),
        );
    }
    let classes = Subspace::from_rows(
        group.dim(),
        RatMat::from_rows(group.dim(), class_rows),
    );
    let representative_forms = (0..classes.dim())
        .map(|i| group.form_of_class(ctx, classes.basis_rows().row(i)))
        .collect();
    LabeledClassSpace {
        dim: classes.dim(),
        classes,
        representative_forms,
    }
}

/// Classes in degree 2 represented by closed J-invariant respectively
/// J-anti-invariant 2-forms.
pub fn j_subgroups(ctx: &Context) -> JSubgroups {
    let j = ctx.j().expect("almost-complex structure required");
    let j2 = {
        let basis = ctx.basis();
        let dim = ctx.dim();
        let data: Vec<Vec<Rational>> = basis
            .monomials(2)
            .iter()
            .map(|set| basis.to_coords(&j.act(&Form::basis(dim, set.indices()))))
            .collect();
        RatMat::from_rows(basis.size(2), data)
    };
    let n2 = ctx.size(2);
    let identity = RatMat::identity(n2);
    let closed = Subspace::kernel_of(&ctx.d_mat(2));
    let invariant = Subspace::kernel_of(&j2.add(&identity.scale(&crate::rational::rat(-1))))
        .intersect(&closed);
    let anti = Subspace::kernel_of(&j2.add(&identity)).intersect(&closed);
    let group = cohomology(ctx, Theory::DeRham, 2);
    let plus = classes_of_cocycle_space(ctx, &group, &invariant);
    let minus = classes_of_cocycle_space(ctx, &group, &anti);
    let sum = plus.classes.sum(&minus.classes);
    JSubgroups {
        total_dim: group.dim(),
        direct: sum.dim() == plus.dim + minus.dim,
        spans: sum.dim() == group.dim(),
        plus,
        minus,
    }
}

#[derive(Clone, Debug)]
pub struct SelfdualSplit {
    pub plus: HarmonicSpace,
    pub minus: HarmonicSpace,
}

/// Closed (anti-)self-dual 2-forms for the metric star; only meaningful
/// when 2-forms are their own star-degree, i.e. in dimension 4.
pub fn selfdual_split(ctx: &Context) -> SelfdualSplit {
    assert_eq!(ctx.dim(), 4, "self-dual splitting needs dimension 4");
    let star = ctx.hodge_star_mat(2);
    let identity = RatMat::identity(ctx.size(2));
    let closed = Subspace::kernel_of(&ctx.d_mat(2));
    let plus = Subspace::kernel_of(&star.add(&identity.scale(&crate::rational::rat(-1))))
        .intersect(&closed);
    let minus = Subspace::kernel_of(&star.add(&identity)).intersect(&closed);
    SelfdualSplit {
        plus: HarmonicSpace { degree: 2, space: plus },
        minus: HarmonicSpace { degree: 2, space: minus },
    }
}

/// Harmonic degree-2 classes of the mixed quotient that are exact for d;
/// its dimension equals h_bc(2) - b(2).
pub fn v_space(ctx: &Context) -> HarmonicSpace {
    let h_bc = harmonic(ctx, Theory::BottChern, 2);
    let exact = Subspace::image_of(&ctx.d_mat(1));
    HarmonicSpace {
        degree: 2,
        space: h_bc.space().intersect(&exact),
    }
}

#[derive(Clone, Debug)]
pub struct InclusionCheck {
    pub degree: usize,
    pub dr_dim: usize,
    pub bc_dim: usize,
    pub included: bool,
    pub witness: Option<Form>,
}

/// Is every d-harmonic k-form also harmonic for the mixed quotient? When
/// not, produce a witness: the first basis monomial lying in the former
/// but not the latter, else the first reduced basis row.
pub fn inclusion_check(ctx: &Context, k: usize) -> InclusionCheck {
    let dr = harmonic(ctx, Theory::DeRham, k);
    let bc = harmonic(ctx, Theory::BottChern, k);
    let included = dr.space().is_subspace_of(bc.space());
    let witness = if included {
        None
    } else {
        let basis = ctx.basis();
        let mut found = None;
        for set in basis.monomials(k) {
            let f = Form::basis(ctx.dim(), set.indices());
            let v = basis.to_coords(&f);
            if dr.space().contains(&v) && !bc.space().contains(&v) {
                found = Some(f);
                break;
            }
        }
        found.or_else(|| {
            let rows = dr.space().basis_rows();
            (0..rows.rows())
                .map(|i| rows.row(i))
                .find(|row| !bc.space().contains(row))
                .map(|row| basis.from_coords(k, row))
        })
    };
    InclusionCheck {
        degree: k,
        dr_dim: dr.dim(),
        bc_dim: bc.dim(),
        included,
        witness,
    }
}
