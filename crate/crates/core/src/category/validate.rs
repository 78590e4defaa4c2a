use alloc::string::String;
use alloc::vec;

use crate::scalar::Scalar;

use super::object::IndecId;
use super::presented::PresentedCategory;

/// The first law found broken by [`PresentedCategory::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    /// `f ∘ id ≠ f` or `id ∘ f ≠ f` for basis element `a` of `Hom(i, j)`.
    Identity {
        i: IndecId,
        j: IndecId,
        a: usize,
    },
    /// `(h_c ∘ g_b) ∘ f_a ≠ h_c ∘ (g_b ∘ f_a)` for `i -> j -> k -> l`.
    Associativity {
        i: IndecId,
        j: IndecId,
        k: IndecId,
        l: IndecId,
        a: usize,
        b: usize,
        c: usize,
    },
    FunctorNotBijective {
        name: String,
    },
    FunctorIdentity {
        name: String,
        i: IndecId,
    },
    FunctorComposition {
        name: String,
        i: IndecId,
        j: IndecId,
        k: IndecId,
        a: usize,
        b: usize,
    },
    /// `<name>Inv` does not invert `<name>`.
    FunctorInverse {
        name: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub failure: Option<ValidationFailure>,
    /// Basis triples `(f_a, g_b, h_c)` checked for associativity.
    pub triples_checked: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl PresentedCategory {
    /// Checks unit and associativity laws on all basis elements, then every
    /// functor's compatibility with composition and identities.
    pub fn validate(&self) -> ValidationReport {
        let mut triples_checked = 0;
        let failure = self
            .check_units()
            .or_else(|| self.check_associativity(&mut triples_checked))
            .or_else(|| self.check_functors());
        ValidationReport {
            failure,
            triples_checked,
        }
    }

    fn check_units(&self) -> Option<ValidationFailure> {
        let f0 = self.field();
        for i in self.all_indecs() {
            for j in self.all_indecs() {
                for a in 0..self.homdim(i, j) {
                    let mut e = vec![f0.zero(); self.homdim(i, j)];
                    e[a] = f0.one();
                    let left = self.compose_indec(i, j, j, &e, self.identity_coords(j));
                    let right = self.compose_indec(i, i, j, self.identity_coords(i), &e);
                    if left != e || right != e {
                        return Some(ValidationFailure::Identity { i, j, a });
                    }
                }
            }
        }
        None
    }

    fn check_associativity(&self, count: &mut usize) -> Option<ValidationFailure> {
        let f0 = self.field();
        let unit = |d: usize, a: usize| {
            let mut e = vec![f0.zero(); d];
            e[a] = f0.one();
            e
        };
        for i in self.all_indecs() {
            for j in self.all_indecs() {
                let dij = self.homdim(i, j);
                if dij == 0 {
                    continue;
                }
                for k in self.all_indecs() {
                    let djk = self.homdim(j, k);
                    if djk == 0 {
                        continue;
                    }
                    for l in self.all_indecs() {
                        let dkl = self.homdim(k, l);
                        if dkl == 0 {
                            continue;
                        }
                        for a in 0..dij {
                            let fa = unit(dij, a);
                            for b in 0..djk {
                                let gb = unit(djk, b);
                                let gf = self.compose_indec(i, j, k, &fa, &gb);
                                for c in 0..dkl {
                                    let hc = unit(dkl, c);
                                    let hg = self.compose_indec(j, k, l, &gb, &hc);
                                    *count += 1;
                                    if self.compose_indec(i, k, l, &gf, &hc) != self.compose_indec(i, j, l, &fa, &hg) {
                                        return Some(ValidationFailure::Associativity { i, j, k, l, a, b, c });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn check_functors(&self) -> Option<ValidationFailure> {
        let n = self.n();
        let f0 = self.field();
        for (name, fd) in self.functors() {
            let mut seen = vec![false; n];
            for &p in &fd.perm {
                if p >= n || seen[p] {
                    return Some(ValidationFailure::FunctorNotBijective { name: name.clone() });
                }
                seen[p] = true;
            }
            let map = |i: IndecId, j: IndecId, v: &[Scalar]| fd.matrices[i * n + j].apply(v).expect("validated shape");
            for i in 0..n {
                if map(i, i, self.identity_coords(i)) != self.identity_coords(fd.perm[i]) {
                    return Some(ValidationFailure::FunctorIdentity { name: name.clone(), i });
                }
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for a in 0..self.homdim(i, j) {
                            let mut fa = vec![f0.zero(); self.homdim(i, j)];
                            fa[a] = f0.one();
                            for b in 0..self.homdim(j, k) {
                                let mut gb = vec![f0.zero(); self.homdim(j, k)];
                                gb[b] = f0.one();
                                let lhs = map(i, k, &self.compose_indec(i, j, k, &fa, &gb));
                                let (pi, pj, pk) = (fd.perm[i], fd.perm[j], fd.perm[k]);
                                let rhs = self.compose_indec(pi, pj, pk, &map(i, j, &fa), &map(j, k, &gb));
                                if lhs != rhs {
                                    return Some(ValidationFailure::FunctorComposition {
                                        name: name.clone(),
                                        i,
                                        j,
                                        k,
                                        a,
                                        b,
                                    });
                                }
                            }
                        }
                    }
                }
            }
            if let Some(inv) = self.functors().get(&alloc::format!("{name}Inv")) {
                if !self.functors_inverse(fd, inv) {
                    return Some(ValidationFailure::FunctorInverse { name: name.clone() });
                }
            }
        }
        None
    }

    fn functors_inverse(&self, f: &super::FunctorData, g: &super::FunctorData) -> bool {
        let n = self.n();
        for i in 0..n {
            if g.perm.get(f.perm[i]) != Some(&i) {
                return false;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (f.perm[i], f.perm[j]);
                let Ok(m) = g.matrices[pi * n + pj].mul(&f.matrices[i * n + j]) else {
                    return false;
                };
                if m != crate::matrix::Mat::identity(self.field(), self.homdim(i, j)) {
                    return false;
                }
            }
        }
        true
    }
}
