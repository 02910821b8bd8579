use std::collections::BTreeMap;

use super::*;
use crate::charcalc::schur_character;
use crate::linalg::rank;

fn tags(h: &FiberSystem) -> Vec<String> {
    h.basis().iter().map(|b| b.tag.clone()).collect()
}

#[test]
fn uniformizing_basis() {
    let e1 = FiberSystem::uniformizing(2);
    assert_eq!(e1.dim(), 3);
    let ws: Vec<String> = e1.basis().iter().map(|b| b.weight.to_string()).collect();
    assert_eq!(ws, ["(1,0|-1)", "(0,1|-1)", "(0,0|-1)"]);
    assert_eq!(tags(&e1), ["dz1v", "dz2v", "v"]);
    assert_eq!(e1.theta_rank(), 2);
    e1.check_flat().unwrap();
    e1.check_homogeneous().unwrap();
}

#[test]
fn derived_dimensions() {
    let e1 = FiberSystem::uniformizing(2);
    assert_eq!(e1.sym(2).dim(), 6);
    let v = FiberSystem::polarized(2);
    let w3 = v.wedge(3);
    assert_eq!(w3.dim(), 20);
    w3.check_flat().unwrap();
    w3.check_homogeneous().unwrap();
    assert!(w3.conjugation().is_some());
    let t = e1.tensor(&FiberSystem::dual_uniformizing(2));
    t.check_flat().unwrap();
    t.check_homogeneous().unwrap();
}

#[test]
fn unitary_has_zero_theta() {
    let u = FiberSystem::plain(&Character::one(2).scale(&BigInt::from(3))).unwrap();
    assert_eq!(u.dim(), 3);
    assert!(u.theta().iter().all(|m| m.is_zero()));
    assert_eq!(u.residue_kernel(1).unwrap().dim(), 3);
}

#[test]
fn dual_theta_injective_on_l() {
    let e2 = FiberSystem::dual_uniformizing(2);
    let l = e2.indices_at((1, 0));
    assert_eq!(l.len(), 1);
    let v = &e2.basis()[l[0]];
    assert_eq!(v.weight, WeightMonomial::l_power(2, 1));
    let image: Vec<Vec<Q>> = e2.theta().iter().map(|m| m.apply(&crate::linalg::unit(3, l[0]))).collect();
    assert!(image.iter().any(|x| x.iter().any(|c| !c.is_zero())));
}

#[test]
fn e1_complex_ranks_match_hand_matrices() {
    let c = FiberComplex::new(&FiberSystem::uniformizing(2)).unwrap();
    assert_eq!(c.term_dims(), [3, 6, 3]);
    // d0: dz1v -> v⊗dz1, dz2v -> v⊗dz2 ; d1: dz1v⊗dz2 -> v⊗dz1^dz2, dz2v⊗dz1 -> -v⊗dz1^dz2
    let d0 = [[0, 0, 0], [0, 0, 0], [0, 0, 0], [0, 0, 0], [1, 0, 0], [0, 1, 0]];
    let d1 = [[0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 0], [0, 1, -1, 0, 0, 0]];
    let to_q = |m: &[&[i64]]| -> Vec<Vec<Q>> { m.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect() };
    let r0 = rank(&to_q(&d0.iter().map(|r| &r[..]).collect::<Vec<_>>()));
    let r1 = rank(&to_q(&d1.iter().map(|r| &r[..]).collect::<Vec<_>>()));
    assert_eq!((r0, r1), (2, 1));
    assert_eq!(c.global_ranks(), [r0, r1]);
    let h = c.cohomology();
    assert_eq!((h.rank(0), h.rank(1)), (2, 1));
    assert_eq!((0..3).map(|i| h.total_dim(i)).collect::<Vec<_>>(), [1, 3, 2]);
}

#[test]
fn zero_system_complex() {
    let c = FiberComplex::new(&FiberSystem::plain(&Character::one(3)).unwrap()).unwrap();
    assert!(c.differentials().iter().all(|d| d.is_zero()));
}

#[test]
fn residue_kernels() {
    let k = FiberSystem::uniformizing(2).residue_kernel(1).unwrap();
    assert_eq!(tags(&k), ["~dz2v", "~v"]);
    let k2 = FiberSystem::dual_uniformizing(2).residue_kernel(1).unwrap();
    // brute force: columns of N1 for E2 are zero except at v*
    let e2 = FiberSystem::dual_uniformizing(2);
    let nonzero_cols = (0..e2.dim()).filter(|&c| !e2.theta()[0].column(c).is_empty()).count();
    assert_eq!(k2.dim(), e2.dim() - nonzero_cols);
    assert_eq!(k2.dim(), 2);
}

#[test]
fn quotient_and_restrict() {
    let e1 = FiberSystem::uniformizing(2);
    let v_line = Subspace::span(3, vec![crate::linalg::unit(3, 2)]);
    let sub = e1.restrict(&v_line).unwrap();
    assert_eq!(sub.dim(), 1);
    let quo = e1.quotient(&v_line).unwrap();
    assert_eq!(tags(&quo), ["dz1v", "dz2v"]);
    assert!(quo.theta().iter().all(|m| m.is_zero()));
    let bad = Subspace::span(3, vec![crate::linalg::unit(3, 0)]);
    assert!(matches!(e1.quotient(&bad), Err(Error::NotASubsystem(_))));
    assert_eq!(e1.quotient(&Subspace::zero(3)).unwrap(), e1);
}

#[test]
fn debug_dump_triplets() {
    let dump = FiberSystem::uniformizing(2).debug_dump();
    assert!(dump.contains("N1 3x3\n2 0 1/1\n"));
    assert!(dump.contains("N2 3x3\n2 1 1/1\n"));
}

/// `Γ_{a,b} = ker(S^a W ⊗ S^b Λ²W → S^{a-1} W ⊗ S^{b-1} Λ²W ⊗ det W)` at n = 3.
#[test]
fn gamma_kernel_description() {
    let pairs: Vec<Vec<usize>> = subsets(3, 2);
    for (a, b) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
        let src_w = multisets(3, a);
        let src_p = multisets(3, b);
        let dst_w = multisets(3, a - 1);
        let dst_p = multisets(3, b - 1);
        let dst_index: BTreeMap<(Vec<usize>, Vec<usize>), usize> = dst_w
            .iter()
            .flat_map(|w| dst_p.iter().map(move |p| (w.clone(), p.clone())))
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let weight = |w: &[usize], p: &[usize]| {
            let mut x = vec![0i64; 3];
            w.iter().for_each(|&i| x[i] += 1);
            p.iter().for_each(|&j| pairs[j].iter().for_each(|&i| x[i] += 1));
            WeightMonomial::new(x, 0)
        };
        let mut by_weight: BTreeMap<WeightMonomial, Vec<Vec<(usize, Q)>>> = BTreeMap::new();
        for w in &src_w {
            for p in &src_p {
                let mut col = Vec::new();
                for t in 0..w.len() {
                    for s in 0..p.len() {
                        let pair = &pairs[p[s]];
                        if let Some((_, sign)) = normalize(vec![w[t], pair[0], pair[1]], true) {
                            let mut rw = w.clone();
                            rw.remove(t);
                            let mut rp = p.clone();
                            rp.remove(s);
                            col.push((dst_index[&(rw, rp)], q(sign)));
                        }
                    }
                }
                by_weight.entry(weight(w, p)).or_default().push(col);
            }
        }
        let mut kernel_char = Character::zero(3);
        for (m, cols) in by_weight {
            let map = SparseMap::from_columns(dst_index.len(), cols);
            let k = map.cols() - rank(&map.to_dense());
            kernel_char.add_term(m, BigInt::from(k));
        }
        let lambda = [(a + b) as i64, b as i64, 0];
        assert_eq!(kernel_char, schur_character(&lambda, 0, 3).unwrap(), "Gamma({a},{b})");
    }
}
