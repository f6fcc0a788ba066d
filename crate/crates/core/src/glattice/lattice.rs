use super::group::{FiniteGroup, Subgroup};
use crate::linalg::{self, IntMat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Largest supported lattice rank.
pub const MAX_LATTICE_RANK: usize = 64;

/// A free Z-module of finite rank with an action of a finite group by
/// integer matrices. The action map is validated on construction: it is a
/// homomorphism and every matrix is invertible over Z.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GLattice {
    group: FiniteGroup,
    rank: usize,
    action: Vec<IntMat>,
}

impl GLattice {
    pub fn new(group: FiniteGroup, action: Vec<IntMat>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::Domain("one action matrix per group element required".into()));
        }
        let rank = action.first().map_or(0, IntMat::rows);
        if rank > MAX_LATTICE_RANK {
            return Err(Error::Resource(format!(
                "rank {rank} exceeds the supported maximum {MAX_LATTICE_RANK}"
            )));
        }
        for m in &action {
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::Domain("action matrices must all be rank x rank".into()));
            }
            if !linalg::is_unimodular(m) && rank > 0 {
                return Err(Error::Invariant("action matrix is not invertible over Z".into()));
            }
        }
        if !action[group.identity()].is_identity() && rank > 0 {
            return Err(Error::Invariant("identity must act as the identity matrix".into()));
        }
        for a in group.elements() {
            for b in group.elements() {
                if &(&action[a] * &action[b]) != &action[group.mul(a, b)] {
                    return Err(Error::Invariant(format!(
                        "action is not a homomorphism at ({}, {})",
                        group.name(a),
                        group.name(b)
                    )));
                }
            }
        }
        Ok(GLattice { group, rank, action })
    }

    /// The lattice of given rank with every element acting as the identity.
    pub fn trivial(group: FiniteGroup, rank: usize) -> Result<Self> {
        let n = group.order();
        Self::new(group, vec![IntMat::identity(rank); n])
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn act(&self, g: usize) -> &IntMat {
        &self.action[g]
    }

    /// The same module viewed as a lattice over a subgroup.
    pub fn restrict(&self, sub: &Subgroup) -> GLattice {
        let action = sub.embedding.iter().map(|&g| self.action[g].clone()).collect();
        GLattice { group: sub.group.clone(), rank: self.rank, action }
    }
}

/// An equivariant map of G-lattices, as a target.rank x source.rank matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeMap {
    pub source: GLattice,
    pub target: GLattice,
    pub matrix: IntMat,
}

impl LatticeMap {
    pub fn new(source: GLattice, target: GLattice, matrix: IntMat) -> Result<Self> {
        if source.group() != target.group() {
            return Err(Error::Domain("lattice map requires a common group".into()));
        }
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(Error::Domain("lattice map matrix has the wrong shape".into()));
        }
        for g in source.group().elements() {
            if &matrix * source.act(g) != target.act(g) * &matrix {
                return Err(Error::Invariant(format!(
                    "map does not commute with the action of {}",
                    source.group().name(g)
                )));
            }
        }
        Ok(LatticeMap { source, target, matrix })
    }

    pub fn identity(l: &GLattice) -> Self {
        LatticeMap { source: l.clone(), target: l.clone(), matrix: IntMat::identity(l.rank()) }
    }

    pub fn compose(&self, inner: &LatticeMap) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::Domain("composition shape mismatch".into()));
        }
        LatticeMap::new(inner.source.clone(), self.target.clone(), &self.matrix * &inner.matrix)
    }
}

/// The Galois group of a biquadratic extension: (Z/2)^2 with elements
/// 1, sa, sb, sab in this order (sa * sb = sab).
pub fn klein_four() -> FiniteGroup {
    let names = vec!["1".into(), "sa".into(), "sb".into(), "sab".into()];
    let mul = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    FiniteGroup::from_mul_table(names, mul).expect("klein four table is a group")
}

/// The permutation lattice Z[G/H]: basis the left cosets of H, ordered by
/// their least element, with G acting by left translation.
pub fn permutation_module(group: &FiniteGroup, sub: &Subgroup) -> Result<GLattice> {
    for (i, &g) in sub.embedding.iter().enumerate() {
        for (j, &h) in sub.embedding.iter().enumerate() {
            if group.mul(g, h) != sub.embedding[sub.group.mul(i, j)] {
                return Err(Error::Domain("not a subgroup of this group".into()));
            }
        }
    }
    let cosets = left_cosets(group, sub);
    let coset_of = |g: usize| cosets.iter().position(|c| c.contains(&g)).expect("cosets cover G");
    let rank = cosets.len();
    let action = group
        .elements()
        .map(|g| {
            IntMat::from_fn(rank, rank, |i, j| {
                // g * (coset j) = coset i?
                let rep = cosets[j][0];
                if coset_of(group.mul(g, rep)) == i { BigInt::one() } else { BigInt::zero() }
            })
        })
        .collect();
    GLattice::new(group.clone(), action)
}

fn left_cosets(group: &FiniteGroup, sub: &Subgroup) -> Vec<Vec<usize>> {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; group.order()];
    for g in group.elements() {
        if seen[g] {
            continue;
        }
        let mut coset: Vec<usize> = sub.embedding.iter().map(|&h| group.mul(g, h)).collect();
        coset.sort_unstable();
        for &x in &coset {
            seen[x] = true;
        }
        cosets.push(coset);
    }
    cosets
}

/// Quotient of `ambient` by the G-fixed primitive vector `v`: the first
/// coordinate where v is +-1 is eliminated against the relation, so the
/// images of the remaining basis vectors form the basis of the quotient.
/// Returns the quotient together with the projection and a section.
fn quotient_by_invariant_vector(
    ambient: &GLattice,
    v: &[BigInt],
) -> Result<(GLattice, IntMat, IntMat)> {
    let n = ambient.rank();
    assert_eq!(v.len(), n);
    for g in ambient.group().elements() {
        if ambient.act(g).mul_vec(v) != v {
            return Err(Error::Invariant("relation vector is not G-fixed".into()));
        }
    }
    let pivot = v
        .iter()
        .position(|x| x.abs().is_one())
        .ok_or_else(|| Error::Invariant("relation vector has no unit coordinate".into()))?;
    let eps = v[pivot].clone(); // +-1

    // proj(x)_i = x_i - eps * x_pivot * v_i for i != pivot; kills v exactly.
    let kept: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let proj = IntMat::from_fn(n - 1, n, |i, j| {
        let row = kept[i];
        let mut e = if j == row { BigInt::one() } else { BigInt::zero() };
        if j == pivot {
            e -= &eps * &v[row];
        }
        e
    });
    let sect = IntMat::from_fn(n, n - 1, |i, j| {
        if i == kept[j] { BigInt::one() } else { BigInt::zero() }
    });
    let action: Vec<IntMat> =
        ambient.group().elements().map(|g| &(&proj * ambient.act(g)) * &sect).collect();
    let quotient = GLattice::new(ambient.group().clone(), action)?;
    Ok((quotient, proj, sect))
}

/// Character lattice of the norm-one torus of a biquadratic extension:
/// Z[G]/(sum of all group elements), rank 3, with basis the images of
/// sa, sb, sab (the identity basis vector is eliminated via the relation).
pub fn biquadratic_norm_one_lattice() -> GLattice {
    let g = klein_four();
    let regular = permutation_module(&g, &g.trivial_subgroup()).expect("regular representation");
    let norm = vec![BigInt::one(); 4];
    let (quotient, _, _) =
        quotient_by_invariant_vector(&regular, &norm).expect("norm vector is fixed and primitive");
    quotient
}

/// Character lattice of the associated coflasque torus, together with the
/// inclusion of the norm-one lattice.
///
/// The ambient module is the direct sum of the three coset lattices
/// Z[G/<sa>] + Z[G/<sb>] + Z[G/<sab>] (rank 6); the quotient by the sum of
/// all basis vectors has rank 5. The inclusion is induced by the coset
/// projections Z[G] -> Z[G/H_i], which send the regular norm element to
/// twice the quotient relation, hence descend to the quotients.
pub fn biquadratic_coflasque_lattice() -> (GLattice, LatticeMap) {
    let g = klein_four();
    let subs: Vec<Subgroup> = [1usize, 2, 3].iter().map(|&s| g.cyclic_subgroup(s)).collect();
    let summands: Vec<GLattice> =
        subs.iter().map(|h| permutation_module(&g, h).expect("coset module")).collect();

    // Direct sum of the three rank-2 coset modules.
    let rank = 6;
    let action: Vec<IntMat> = g
        .elements()
        .map(|e| {
            let mut m = IntMat::zeros(rank, rank);
            for (k, s) in summands.iter().enumerate() {
                m.set_block(2 * k, 2 * k, s.act(e));
            }
            m
        })
        .collect();
    let ambient = GLattice::new(g.clone(), action).expect("direct sum of G-lattices");
    let relation = vec![BigInt::one(); rank];
    let (qhat, proj_q, _) =
        quotient_by_invariant_vector(&ambient, &relation).expect("norm vector is fixed");

    // Coset projections of the regular representation, one block per summand.
    let regular = permutation_module(&g, &g.trivial_subgroup()).expect("regular representation");
    let cosets: Vec<Vec<Vec<usize>>> = subs.iter().map(|h| left_cosets(&g, h)).collect();
    let pi = IntMat::from_fn(rank, 4, |i, j| {
        let (summand, coset) = (i / 2, i % 2);
        if cosets[summand][coset].contains(&j) { BigInt::one() } else { BigInt::zero() }
    });

    let that = biquadratic_norm_one_lattice();
    // Section of the T-hat quotient: basis vectors sa, sb, sab of Z[G].
    let sect_t = IntMat::from_fn(4, 3, |i, j| {
        if i == j + 1 { BigInt::one() } else { BigInt::zero() }
    });
    let matrix = &(&proj_q * &pi) * &sect_t;
    let inclusion = LatticeMap::new(that, qhat.clone(), matrix)
        .expect("coset projections are equivariant and descend");
    let _ = regular;
    (qhat, inclusion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    #[test]
    fn permutation_module_ranks_match_coset_counts() {
        let g = klein_four();
        for sub in g.subgroups() {
            let m = permutation_module(&g, &sub).unwrap();
            assert_eq!(m.rank(), g.order() / sub.order());
        }
    }

    #[test]
    fn regular_representation_is_by_permutation_matrices() {
        let g = klein_four();
        let m = permutation_module(&g, &g.trivial_subgroup()).unwrap();
        assert_eq!(m.rank(), 4);
        for e in g.elements() {
            let a = m.act(e);
            for i in 0..4 {
                let ones = (0..4).filter(|&j| a[(i, j)].is_one()).count();
                let zeros = (0..4).filter(|&j| a[(i, j)].is_zero()).count();
                assert_eq!((ones, zeros), (1, 3));
            }
        }
    }

    #[test]
    fn coset_module_of_full_group_is_trivial_line() {
        let g = klein_four();
        let m = permutation_module(&g, &g.full_subgroup()).unwrap();
        assert_eq!(m.rank(), 1);
        for e in g.elements() {
            assert!(m.act(e).is_identity());
        }
    }

    #[test]
    fn sa_acts_trivially_on_its_own_cosets() {
        let g = klein_four();
        let m = permutation_module(&g, &g.cyclic_subgroup(1)).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.act(1).is_identity());
        assert!(!m.act(2).is_identity());
    }

    #[test]
    fn action_is_homomorphism_for_all_constructions() {
        let g = klein_four();
        let mut lattices = vec![biquadratic_norm_one_lattice()];
        lattices.push(biquadratic_coflasque_lattice().0);
        for sub in g.subgroups() {
            lattices.push(permutation_module(&g, &sub).unwrap());
        }
        for l in &lattices {
            let grp = l.group();
            for a in grp.elements() {
                for b in grp.elements() {
                    assert_eq!(&(l.act(a) * l.act(b)), l.act(grp.mul(a, b)));
                }
            }
        }
    }

    #[test]
    fn norm_one_lattice_shape() {
        let t = biquadratic_norm_one_lattice();
        assert_eq!(t.rank(), 3);
        for g in t.group().elements() {
            assert!(linalg::is_unimodular(t.act(g)));
        }
    }

    #[test]
    fn coflasque_lattice_shape_and_equivariance() {
        let (q, incl) = biquadratic_coflasque_lattice();
        assert_eq!(q.rank(), 5);
        assert_eq!(incl.source.rank(), 3);
        assert_eq!(incl.target.rank(), 5);
        // LatticeMap::new validated equivariance; double-check one case.
        let g = 2;
        assert_eq!(
            &(&incl.matrix * incl.source.act(g)),
            &(incl.target.act(g) * &incl.matrix)
        );
    }

    #[test]
    fn inclusion_has_free_rank_two_cokernel_with_trivial_action() {
        let (q, incl) = biquadratic_coflasque_lattice();
        let s = linalg::snf(&incl.matrix);
        assert_eq!(s.rank, 3, "inclusion is injective");
        assert!(s.invariant_factors().iter().all(num_traits::One::is_one), "cokernel is torsion-free");
        // Trivial action on the cokernel: (act(g) - 1) maps into the image.
        for g in q.group().elements() {
            let mut diff = q.act(g).clone();
            diff.sub_block(0, 0, &IntMat::identity(5));
            assert!(
                linalg::solve_matrix(&incl.matrix, &diff).is_some(),
                "cokernel action must be trivial"
            );
        }
    }

    #[test]
    fn quotient_presentations_are_torsion_free() {
        // The composite Z -> sum Z[G/H_i] -> Q-hat is zero and the relation
        // matrix has all invariant factors 1.
        let g = klein_four();
        let relation = IntMat::from_fn(6, 1, |_, _| BigInt::one());
        let s = linalg::snf(&relation);
        assert_eq!(s.rank, 1);
        assert!(s.invariant_factors().iter().all(num_traits::One::is_one));
        let regular_relation = IntMat::from_fn(4, 1, |_, _| BigInt::one());
        let s = linalg::snf(&regular_relation);
        assert!(s.invariant_factors().iter().all(num_traits::One::is_one));
        let _ = g;
    }

    #[test]
    fn non_equivariant_map_is_rejected() {
        let t = biquadratic_norm_one_lattice();
        let (q, _) = biquadratic_coflasque_lattice();
        let bogus = IntMat::from_fn(5, 3, |i, j| BigInt::from((i + 2 * j) as i64));
        assert!(matches!(LatticeMap::new(t, q, bogus), Err(Error::Invariant(_))));
    }

    #[test]
    fn restriction_restricts_the_action() {
        let t = biquadratic_norm_one_lattice();
        let g = t.group().clone();
        let sub = g.cyclic_subgroup(1);
        let r = t.restrict(&sub);
        assert_eq!(r.rank(), 3);
        assert_eq!(r.group().order(), 2);
        assert_eq!(r.act(1), t.act(1));
    }

    #[test]
    fn identity_map_composes() {
        let t = biquadratic_norm_one_lattice();
        let id = LatticeMap::identity(&t);
        let c = id.compose(&id).unwrap();
        assert!(c.matrix.is_identity());
    }
}
