use crate::gradedmat::{Coeff, GradedMatrix};

fn sign<C: Coeff>(v: &C, odd: bool) -> C {
    if odd {
        v.negated()
    } else {
        v.clone()
    }
}

/// Gradings of the composite basis `(a, b) ↦ a * dim(B) + b`.
pub fn kron_gradings(ga: &[u8], gb: &[u8]) -> Vec<u8> {
    ga.iter()
        .flat_map(|x| gb.iter().map(move |y| (x + y) % 2))
        .collect()
}

/// `(A ⊗ B)^{(a,b)}_{(c,d)} = (−1)^{([b]+[d])[c]} A^a_c B^b_d`.
pub fn graded_kron<C: Coeff>(a: &GradedMatrix<C>, b: &GradedMatrix<C>) -> GradedMatrix<C> {
    let (ga, gb) = (a.gradings(), b.gradings());
    let nb = b.dim();
    let mut out = GradedMatrix::zero(kron_gradings(ga, gb));
    for (ra, ca, x) in a.entries() {
        for (rb, cb, y) in b.entries() {
            let odd = (gb[rb] + gb[cb]) * ga[ca] % 2 == 1;
            out.set(ra * nb + rb, ca * nb + cb, sign(&x.times(y), odd));
        }
    }
    match (a.parity(), b.parity()) {
        (Some(p), Some(q)) => out.with_parity((p + q) % 2).unwrap_or_else(|_| unreachable!()),
        _ => out,
    }
}

/// Graded twist `P(v_a ⊗ v_b) = (−1)^{[a][b]} v_b ⊗ v_a` on `V ⊗ V`.
pub fn graded_permutation<C: Coeff>(g: &[u8]) -> GradedMatrix<C> {
    let n = g.len();
    let mut out = GradedMatrix::zero(kron_gradings(g, g));
    for a in 0..n {
        for b in 0..n {
            let odd = g[a] * g[b] == 1;
            out.set(b * n + a, a * n + b, sign(&C::one(), odd));
        }
    }
    out.with_parity(0).unwrap_or_else(|_| unreachable!())
}

/// Entrywise graded conjugation `(X^†)^b_a = (−1)^{[a]([a]+[b])} X^a_b`;
/// coefficients are left unchanged.
pub fn graded_dagger<C: Coeff>(x: &GradedMatrix<C>) -> GradedMatrix<C> {
    let g = x.gradings();
    let mut out = GradedMatrix::zero(g.to_vec());
    for (r, c, v) in x.entries() {
        let odd = g[r] * (g[r] + g[c]) % 2 == 1;
        out.set(c, r, sign(v, odd));
    }
    out
}

/// Graded conjugation on `A ⊗ B` applied factorwise, `(x ⊗ y)^† = x^† ⊗ y^†`.
///
/// On a composite basis this differs from `graded_dagger` by the Koszul
/// placement sign whenever both factors carry odd indices.
pub fn tensor_dagger<C: Coeff>(m: &GradedMatrix<C>, ga: &[u8], gb: &[u8]) -> GradedMatrix<C> {
    let nb = gb.len();
    let mut out = GradedMatrix::zero(m.gradings().to_vec());
    for (r, col, v) in m.entries() {
        let (a, b) = (r / nb, r % nb);
        let (c, d) = (col / nb, col % nb);
        let mut e = (gb[b] + gb[d]) * ga[c];
        e += ga[a] * (ga[a] + ga[c]);
        e += gb[b] * (gb[b] + gb[d]);
        e += (gb[b] + gb[d]) * ga[a];
        out.set(c * nb + d, a * nb + b, sign(v, e % 2 == 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qring::Rational;

    type M = GradedMatrix<Rational>;

    #[test]
    fn kron_of_identities_is_identity() {
        let g = vec![1, 0, 0, 0, 1];
        let i = M::identity(g.clone());
        assert_eq!(graded_kron(&i, &i), M::identity(kron_gradings(&g, &g)));
    }

    #[test]
    fn kron_signs() {
        // (3,2) layout [mu1, i1, i2, i3, mu2]
        let g = vec![1, 0, 0, 0, 1];
        let e = M::elementary(g.clone(), 1, 0);
        let k = graded_kron(&e, &e);
        assert_eq!(k.entry(5 + 1, 0), Rational::from_int(-1));
        let a = M::elementary(g.clone(), 1, 2);
        let b = M::elementary(g.clone(), 0, 4);
        assert_eq!(graded_kron(&a, &b).entry(5, 2 * 5 + 4), Rational::one());
    }

    #[test]
    fn permutation_signs_and_square() {
        let g = vec![1, 0, 0, 0, 1];
        let p: M = graded_permutation(&g);
        // v_mu1 ⊗ v_mu2 ↦ −v_mu2 ⊗ v_mu1
        assert_eq!(p.entry(4 * 5, 4), Rational::from_int(-1));
        assert_eq!(p.entry(2 * 5 + 1, 5 + 2), Rational::one());
        assert_eq!(&p * &p, M::identity(kron_gradings(&g, &g)));
    }

    #[test]
    fn dagger_examples() {
        let g = vec![1, 0, 0, 0, 1];
        let x = M::elementary(g.clone(), 0, 1);
        assert_eq!(graded_dagger(&x), -&M::elementary(g.clone(), 1, 0));
        let y = M::elementary(g.clone(), 1, 2);
        assert_eq!(graded_dagger(&y), M::elementary(g.clone(), 2, 1));
        let d = M::diagonal(g.clone(), (1..=5).map(Rational::from_int).collect());
        assert_eq!(graded_dagger(&d), d);
    }

    #[test]
    fn tensor_dagger_is_factorwise() {
        let g = vec![1, 0, 1];
        for (a, b, c, d) in [(0, 1, 2, 0), (0, 2, 1, 2), (1, 0, 0, 2), (2, 2, 0, 0)] {
            let x = M::elementary(g.clone(), a, b);
            let y = M::elementary(g.clone(), c, d);
            let lhs = tensor_dagger(&graded_kron(&x, &y), &g, &g);
            let rhs = graded_kron(&graded_dagger(&x), &graded_dagger(&y));
            assert_eq!(lhs, rhs);
        }
    }
}
