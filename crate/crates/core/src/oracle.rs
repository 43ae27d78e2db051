//! Independent dimension oracle for chain observable algebras.
//!
//! Golden values must come from a computation route that is independent of
//! the construction it certifies. The engine's route builds the global
//! idempotent from the η_t-insertion path of each pair idempotent and the
//! left-arrow recursion; the oracle here instead assembles each adjacent
//! pair idempotent along the η_s-insertion path only, stacks the pair
//! idempotents in the two-layer pattern, and ranks the resulting matrix.
//! The only shared code is the exact matrix kernel.

use crate::bialgebra::{canonical_lambda, canonical_lambda_hat, dual, WeakBialgebra};
use crate::linmap::LinMap;
use crate::spinchain::SiteParity;

/// The η_s-insertion composite: (μ_s⊗t)∘(s⊗λ)∘(s⊗t⊗η_s), assembled directly
/// from the given structure maps.
fn left_path_idempotent(
    s_mul: &LinMap,
    s_unit: &LinMap,
    t_identity: &LinMap,
    lambda: &LinMap,
) -> LinMap {
    let s_identity = LinMap::identity(s_unit.codomain(), s_unit.field());
    s_identity
        .tensor(t_identity)
        .tensor(s_unit)
        .then(&s_identity.tensor(lambda))
        .then(&s_mul.tensor(t_identity))
}

/// Observable-algebra dimension of the alternating chain on sites 0…n,
/// computed by the oracle route described in the module docs.
pub fn observable_dimension_oracle(
    h: &WeakBialgebra,
    n: usize,
    parity: SiteParity,
) -> Result<usize, crate::bialgebra::BialgebraError> {
    let pair = dual(h)?;
    let field = h.field();
    let id_h = LinMap::identity(pair.h.space(), field);
    let id_hat = LinMap::identity(pair.hat.space(), field);
    let even_is_h = parity == SiteParity::EvenCarriesAlgebra;

    // λ: H⊗Ĥ → Ĥ⊗H sits between s_i = Ĥ and s_{i+1} = H (t = H, s = Ĥ);
    // λ̂: Ĥ⊗H → H⊗Ĥ sits between s_i = H and s_{i+1} = Ĥ (t = Ĥ, s = H)
    let lam = canonical_lambda(&pair);
    let lam_hat = canonical_lambda_hat(&pair);
    let bar_on_hat_h = left_path_idempotent(pair.hat.mul(), pair.hat.unit(), &id_h, &lam);
    let bar_on_h_hat = left_path_idempotent(pair.h.mul(), pair.h.unit(), &id_hat, &lam_hat);

    let site_is_h = |i: usize| i.is_multiple_of(2) == even_is_h;
    let site_identity = |i: usize| if site_is_h(i) { &id_h } else { &id_hat };
    let pair_bar = |i: usize| {
        if site_is_h(i) {
            &bar_on_h_hat
        } else {
            &bar_on_hat_h
        }
    };

    let layer = |start: usize| -> LinMap {
        let mut factors: Vec<&LinMap> = Vec::new();
        if start == 1 {
            factors.push(site_identity(0));
        }
        let mut i = start;
        while i < n {
            factors.push(pair_bar(i));
            i += 2;
        }
        if i <= n {
            factors.push(site_identity(i));
        }
        LinMap::tensor_all(&factors)
    };

    let idem = if n == 0 {
        layer(0)
    } else {
        layer(0).then(&layer(1))
    };
    Ok(idem.matrix().rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{cyclic_group_table, group_algebra, pair_groupoid_algebra};
    use crate::field::FieldDesc;
    use crate::spinchain::{observable_algebra, SpinChainSpec};

    const Q: FieldDesc = FieldDesc::Rational;

    #[test]
    fn oracle_matches_engine_on_strict_chains() {
        let z2 = group_algebra(&cyclic_group_table(2), Q).unwrap();
        for n in 1..=3 {
            let by_oracle = observable_dimension_oracle(&z2, n, SiteParity::default()).unwrap();
            let (_, by_engine) = observable_algebra(&SpinChainSpec::new(z2.clone(), n)).unwrap();
            assert_eq!(by_oracle, by_engine);
            assert_eq!(by_oracle, 2usize.pow(n as u32 + 1));
        }
    }

    #[test]
    fn oracle_matches_engine_on_m2_chain() {
        let m2 = pair_groupoid_algebra(2, Q);
        for n in 1..=2 {
            let by_oracle = observable_dimension_oracle(&m2, n, SiteParity::default()).unwrap();
            let (_, by_engine) = observable_algebra(&SpinChainSpec::new(m2.clone(), n)).unwrap();
            assert_eq!(by_oracle, by_engine);
        }
    }
}
