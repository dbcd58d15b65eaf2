use crate::sweep::{all, first_single, first_triple, AxiomReport, Violation};

use super::Brace;

pub const BRACE_AXIOM: &str = "a∘(b+c) + a = a∘b + a∘c";
pub const CIRC_IDENTITY: &str = "0∘a = a = a∘0";
pub const CIRC_INVERSE: &str = "λ_a is a bijection (∘-inverses exist)";
pub const CIRC_ASSOC: &str = "(a∘b)∘c = a∘(b∘c)";

/// Checks the brace axiom, that 0 is the ∘-identity, that every `λ_a` is
/// bijective and that ∘ is associative; stops at the first failing identity.
pub fn verify_brace_axioms(b: &Brace) -> AxiomReport {
    let g = b.group();
    let xs = all(b.order());
    let mut checked = Vec::new();

    let steps: [(&'static str, &dyn Fn() -> Option<Violation>); 4] = [
        (CIRC_IDENTITY, &|| {
            first_single(&xs, |a| {
                (b.circ(0, a) != a || b.circ(a, 0) != a).then_some(CIRC_IDENTITY)
            })
        }),
        (BRACE_AXIOM, &|| {
            first_triple(&xs, &xs, &xs, |x, y, z| {
                let lhs = g.add(b.circ(x, g.add(y, z)), x);
                let rhs = g.add(b.circ(x, y), b.circ(x, z));
                (lhs != rhs).then_some(BRACE_AXIOM)
            })
        }),
        (CIRC_INVERSE, &|| {
            first_single(&xs, |a| {
                let mut seen = vec![false; xs.len()];
                for &y in &xs {
                    let v = b.lambda(a, y) as usize;
                    if seen[v] {
                        return Some(CIRC_INVERSE);
                    }
                    seen[v] = true;
                }
                None
            })
        }),
        (CIRC_ASSOC, &|| {
            first_triple(&xs, &xs, &xs, |x, y, z| {
                (b.circ(b.circ(x, y), z) != b.circ(x, b.circ(y, z))).then_some(CIRC_ASSOC)
            })
        }),
    ];

    for (name, run) in steps {
        checked.push(name);
        if let Some(v) = run() {
            return AxiomReport {
                checked,
                failure: Some(v),
            };
        }
    }
    AxiomReport {
        checked,
        failure: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::abelian::AbelianPGroup;

    fn z125() -> AbelianPGroup {
        AbelianPGroup::cyclic(5, 3).unwrap()
    }

    #[test]
    fn trivial_passes() {
        let b = Brace::trivial(z125());
        let r = verify_brace_axioms(&b);
        assert!(r.passed());
        assert_eq!(r.checked.len(), 4);
    }

    #[test]
    fn radical_passes() {
        let g = z125();
        let b = Brace::from_table_unchecked(
            g.clone(),
            crate::sweep::build_table(125, |a, b| ((5 * a as u64 * b as u64) % 125) as u32),
        )
        .unwrap();
        assert!(verify_brace_axioms(&b).passed());
    }

    #[test]
    fn broken_table_fails_with_witness() {
        let g = z125();
        let t = crate::sweep::build_table(125, |a, b| ((5 * a as u64 + 5 * b as u64) % 125) as u32);
        let b = Brace::from_table_unchecked(g.clone(), t).unwrap();
        let r = verify_brace_axioms(&b);
        let v = r.failure.clone().unwrap();
        // 0∘a = a + 5a fails first, at a = 1
        assert_eq!(v.identity, CIRC_IDENTITY);
        assert_eq!(v.witness, vec![1]);
        // exhaustive oracle: the identity really fails at the witness
        assert_ne!(b.circ(0, 1), 1);
        assert!(matches!(r.into_result(), Err(Error::Axiom { .. })));
    }

    #[test]
    fn non_distributive_table_named() {
        // a*b = 5ab² is not additive in b
        let g = AbelianPGroup::cyclic(5, 2).unwrap();
        let t = crate::sweep::build_table(25, |a, b| ((5 * a as u64 * b as u64 * b as u64) % 25) as u32);
        let b = Brace::from_table_unchecked(g, t).unwrap();
        let v = verify_brace_axioms(&b).failure.unwrap();
        assert_eq!(v.identity, BRACE_AXIOM);
        let (x, y, z) = (v.witness[0], v.witness[1], v.witness[2]);
        let g = b.group();
        assert_ne!(
            g.add(b.circ(x, g.add(y, z)), x),
            g.add(b.circ(x, y), b.circ(x, z))
        );
    }
}
