use serde::Serialize;

use crate::construction::Scheme;
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::rational::Rational;
use crate::verification::joint::Joint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyWitness {
    pub x: String,
    pub y: String,
    pub expected: Rational,
    pub actual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InformativenessWitness {
    pub y: String,
    pub z: String,
    pub xs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecrecyWitness {
    pub x: String,
    pub z: String,
    pub q_xz: Rational,
    /// `Q_Z(z) · P_X(x)`.
    pub expected: Rational,
}

/// Pass/fail with the first counterexample in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check<W> {
    pub pass: bool,
    pub witness: Option<W>,
}

impl<W> Check<W> {
    fn from_witness(witness: Option<W>) -> Self {
        Check { pass: witness.is_none(), witness }
    }
}

/// `Q_XY = P_XY`, matched by label. Instance states the joint does not
/// mention must have zero mass.
pub fn check_consistency(joint: &Joint, inst: &Instance) -> Result<Check<ConsistencyWitness>> {
    if joint.y_labels() != inst.y_labels() {
        return Err(Error::DimensionMismatch(format!(
            "y outcomes differ: scheme has [{}], instance has [{}]",
            joint.y_labels().join(" "),
            inst.y_labels().join(" ")
        )));
    }
    let mut rows = vec![None; inst.n()];
    for (r, label) in joint.x_labels().iter().enumerate() {
        let i = inst
            .x_index(label)
            .ok_or_else(|| Error::DimensionMismatch(format!("scheme state `{label}` is not in the instance")))?;
        rows[i] = Some(r);
    }
    let q_xy = joint.q_xy();
    for (i, row) in rows.iter().enumerate() {
        for (j, expected) in inst.p_xy()[i].iter().enumerate() {
            let actual = row.map_or_else(Rational::zero, |r| q_xy[r][j].clone());
            if actual != *expected {
                return Ok(Check::from_witness(Some(ConsistencyWitness {
                    x: inst.x_labels()[i].clone(),
                    y: inst.y_labels()[j].clone(),
                    expected: expected.clone(),
                    actual,
                })));
            }
        }
    }
    Ok(Check::from_witness(None))
}

/// Every supported `(y, z)` has exactly one state with positive mass.
pub fn check_informativeness(joint: &Joint) -> Check<InformativenessWitness> {
    for j in 0..joint.m() {
        for k in 0..joint.p() {
            let xs: Vec<usize> = (0..joint.n()).filter(|&i| joint.q(i, j, k).is_positive()).collect();
            if xs.len() > 1 {
                return Check::from_witness(Some(InformativenessWitness {
                    y: joint.y_labels()[j].clone(),
                    z: joint.z_labels()[k].clone(),
                    xs: xs.iter().map(|&i| joint.x_labels()[i].clone()).collect(),
                }));
            }
        }
    }
    Check::from_witness(None)
}

/// `Q_XZ(x, z) = Q_Z(z) · P_X(x)` for every state and signal.
pub fn check_secrecy(joint: &Joint) -> Check<SecrecyWitness> {
    let q_z = joint.q_z();
    let q_xz = joint.q_xz();
    for (i, row) in q_xz.iter().enumerate() {
        for (k, actual) in row.iter().enumerate() {
            let expected = &q_z[k] * &joint.px()[i];
            if *actual != expected {
                return Check::from_witness(Some(SecrecyWitness {
                    x: joint.x_labels()[i].clone(),
                    z: joint.z_labels()[k].clone(),
                    q_xz: actual.clone(),
                    expected,
                }));
            }
        }
    }
    Check::from_witness(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Marginals {
    pub x_labels: Vec<String>,
    pub y_labels: Vec<String>,
    pub z_labels: Vec<String>,
    pub q_z: Vec<Rational>,
    pub q_xz: Vec<Vec<Rational>>,
    pub q_yz: Vec<Vec<Rational>>,
    pub q_xy: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub consistency: Check<ConsistencyWitness>,
    pub informativeness: Check<InformativenessWitness>,
    pub secrecy: Check<SecrecyWitness>,
    pub marginals: Marginals,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.consistency.pass && self.informativeness.pass && self.secrecy.pass
    }
}

pub fn verify_joint(joint: &Joint, inst: &Instance) -> Result<VerificationReport> {
    Ok(VerificationReport {
        consistency: check_consistency(joint, inst)?,
        informativeness: check_informativeness(joint),
        secrecy: check_secrecy(joint),
        marginals: Marginals {
            x_labels: joint.x_labels().to_vec(),
            y_labels: joint.y_labels().to_vec(),
            z_labels: joint.z_labels().to_vec(),
            q_z: joint.q_z(),
            q_xz: joint.q_xz(),
            q_yz: joint.q_yz(),
            q_xy: joint.q_xy(),
        },
    })
}

pub fn verify(scheme: &Scheme, inst: &Instance) -> Result<VerificationReport> {
    verify_joint(&Joint::from_scheme(scheme), inst)
}

/// The inequality chain behind necessity, evaluated on a concrete joint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessityAudit {
    pub pass: bool,
    /// `Q(x, y, z) ≤ Q_XZ(x, z)` everywhere.
    pub dominated: bool,
    /// `φ(x, y) ∩ φ(x', y) = ∅` for every `y` and `x ≠ x'`.
    pub disjoint: bool,
    /// `Σ_x Σ_{k ∈ φ(x, y)} Q_Z(z_k)` per `y`; `None` off supp Y.
    pub signal_mass: Vec<Option<Rational>>,
    /// Whether every `signal_mass` entry is at most one.
    pub bounded: bool,
}

pub fn necessity_audit(joint: &Joint) -> NecessityAudit {
    let q_xz = joint.q_xz();
    let dominated = (0..joint.n()).all(|i| {
        (0..joint.m()).all(|j| (0..joint.p()).all(|k| joint.q(i, j, k) <= &q_xz[i][k]))
    });

    let disjoint = (0..joint.m()).all(|j| {
        let mut owner: Vec<Option<usize>> = vec![None; joint.p()];
        (0..joint.n()).all(|i| {
            joint.support_signals(i, j).into_iter().all(|k| match owner[k] {
                Some(other) => other == i,
                None => {
                    owner[k] = Some(i);
                    true
                }
            })
        })
    });

    let q_z = joint.q_z();
    let q_xy = joint.q_xy();
    let signal_mass: Vec<Option<Rational>> = (0..joint.m())
        .map(|j| {
            let in_supp = (0..joint.n()).any(|i| q_xy[i][j].is_positive());
            in_supp.then(|| {
                (0..joint.n())
                    .flat_map(|i| joint.support_signals(i, j))
                    .map(|k| q_z[k].clone())
                    .sum()
            })
        })
        .collect();
    let bounded = signal_mass.iter().flatten().all(|s| *s <= 1);
    NecessityAudit { pass: dominated && disjoint && bounded, dominated, disjoint, signal_mass, bounded }
}

/// Bob's lookup: `entries[j][k]` is the unique state for `(y_j, z_k)`, or
/// `None` when `Q_YZ(y_j, z_k) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeTable {
    pub y_labels: Vec<String>,
    pub z_labels: Vec<String>,
    pub x_labels: Vec<String>,
    pub entries: Vec<Vec<Option<usize>>>,
}

impl DecodeTable {
    pub fn get(&self, j: usize, k: usize) -> Option<usize> {
        self.entries[j][k]
    }
}

pub fn decode_table(joint: &Joint) -> Result<DecodeTable> {
    let mut entries = vec![vec![None; joint.p()]; joint.m()];
    for (j, row) in entries.iter_mut().enumerate() {
        for (k, slot) in row.iter_mut().enumerate() {
            let mut xs = (0..joint.n()).filter(|&i| joint.q(i, j, k).is_positive());
            *slot = xs.next();
            if xs.next().is_some() {
                return Err(Error::NotInformative {
                    y: joint.y_labels()[j].clone(),
                    z: joint.z_labels()[k].clone(),
                });
            }
        }
    }
    Ok(DecodeTable {
        y_labels: joint.y_labels().to_vec(),
        z_labels: joint.z_labels().to_vec(),
        x_labels: joint.x_labels().to_vec(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_scheme;
    use crate::test_support::{arb_feasible_instance, instance, instance_from};
    use proptest::prelude::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn xor() -> (Instance, Scheme) {
        let inst = instance(&[&["1/4", "1/4"], &["1/4", "1/4"]]);
        let s = build_scheme(&inst).unwrap();
        (inst, s)
    }

    fn corr23() -> (Instance, Scheme) {
        let inst = instance_from(&["1/2", "1/2"], &[&["1/2", "1/2", "0"], &["0", "1/2", "1/2"]]);
        let s = build_scheme(&inst).unwrap();
        (inst, s)
    }

    /// Joint with signals `groups[g]` merged into one signal each.
    fn merge(joint: &Joint, groups: &[&[usize]]) -> Joint {
        let q = (0..joint.n())
            .map(|i| {
                (0..joint.m())
                    .map(|j| groups.iter().map(|g| g.iter().map(|&k| joint.q(i, j, k)).sum()).collect())
                    .collect()
            })
            .collect();
        let z_labels = (1..=groups.len()).map(|k| format!("z{k}")).collect();
        Joint::new(joint.x_labels().to_vec(), joint.y_labels().to_vec(), z_labels, joint.px().to_vec(), q).unwrap()
    }

    #[test]
    fn built_schemes_verify() {
        for (inst, s) in [xor(), corr23()] {
            let rep = verify(&s, &inst).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.marginals.q_z, s.weights());
        }
    }

    #[test]
    fn perturbed_weights_break_consistency() {
        let (inst, s) = corr23();
        let bent = Scheme::new(
            s.x_labels().to_vec(),
            s.y_labels().to_vec(),
            s.z_labels().to_vec(),
            s.px().to_vec(),
            vec![r(1, 2) + r(1, 100), r(1, 2) - r(1, 100)],
            s.perms().to_vec(),
        )
        .unwrap();
        let rep = verify(&bent, &inst).unwrap();
        assert!(!rep.consistency.pass);
        assert_eq!(
            rep.consistency.witness,
            Some(ConsistencyWitness { x: "x1".into(), y: "y1".into(), expected: r(1, 4), actual: r(51, 200) })
        );
        assert!(rep.secrecy.pass && rep.informativeness.pass);
    }

    #[test]
    fn scheme_against_other_instance() {
        let (_, s) = xor();
        let other = instance(&[&["1/2", "0"], &["0", "1/2"]]);
        assert!(!verify(&s, &other).unwrap().consistency.pass);
        let wider = instance(&[&["1/3", "1/3", "1/3"]]);
        assert!(matches!(verify(&s, &wider), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn merged_signals_are_not_informative() {
        let (_, s) = corr23();
        let merged = merge(&Joint::from_scheme(&s), &[&[0, 1]]);
        let check = check_informativeness(&merged);
        assert_eq!(
            check.witness,
            Some(InformativenessWitness { y: "y2".into(), z: "z1".into(), xs: vec!["x1".into(), "x2".into()] })
        );
        assert!(check_secrecy(&merged).pass);
        assert!(matches!(decode_table(&merged), Err(Error::NotInformative { .. })));
    }

    #[test]
    fn zero_mass_pairs_are_ignored() {
        let (_, s) = corr23();
        let joint = Joint::from_scheme(&s);
        // (y3, z1) is reached only by the padding row.
        assert!(joint.q_yz()[2][0].is_zero());
        assert!(check_informativeness(&joint).pass);
    }

    #[test]
    fn dropping_a_pair_breaks_secrecy() {
        let (_, s) = xor();
        let mut joint = Joint::from_scheme(&s);
        joint.set(1, 1, 0, Rational::zero());
        let check = check_secrecy(&joint);
        assert!(!check.pass);
        // Both states are off for z1; (x1, z1) is first in row-major order.
        assert_eq!(
            check.witness,
            Some(SecrecyWitness { x: "x1".into(), z: "z1".into(), q_xz: r(1, 4), expected: r(1, 8) })
        );
        let q_xz = joint.q_xz();
        assert_eq!(q_xz[1][0], Rational::zero());
        assert_ne!(q_xz[1][0], &joint.q_z()[0] * &joint.px()[1]);
    }

    #[test]
    fn single_constant_signal_works_only_for_permutations() {
        for (inst, is_perm) in [
            (instance(&[&["0", "1/3"], &["2/3", "0"]]), true),
            (instance(&[&["1/4", "1/4"], &["1/4", "1/4"]]), false),
        ] {
            let px: Vec<Rational> = inst.p_xy().iter().map(|row| row.iter().sum()).collect();
            let q = inst.p_xy().iter().map(|row| row.iter().map(|v| vec![v.clone()]).collect()).collect();
            let joint = Joint::new(inst.x_labels().to_vec(), inst.y_labels().to_vec(), vec!["z1".into()], px, q).unwrap();
            let rep = verify_joint(&joint, &inst).unwrap();
            assert!(rep.secrecy.pass && rep.consistency.pass);
            assert_eq!(rep.passed(), is_perm);
        }
    }

    #[test]
    fn support_signals_and_decoding() {
        let (_, s) = corr23();
        let joint = Joint::from_scheme(&s);
        assert_eq!(joint.support_signals(1, 1), vec![0]);
        assert_eq!(s.support_signals(1, 1), vec![0]);
        let table = decode_table(&joint).unwrap();
        assert_eq!(table.get(1, 0), Some(1)); // (y2, z1) → x2
        assert_eq!(table.get(0, 1), None); // (y1, z2): σ2 sends the padding row to y1

        let (_, s) = xor();
        let joint = Joint::from_scheme(&s);
        assert_eq!(joint.support_signals(0, 1), vec![1]);
        let table = decode_table(&joint).unwrap();
        assert_eq!(table.get(1, 1), Some(0)); // (y2, z2) → x1
        assert_eq!(table.get(0, 1), Some(1)); // (y1, z2) → x2
    }

    #[test]
    fn necessity_chain_on_worked_examples() {
        let (_, s) = corr23();
        let audit = necessity_audit(&Joint::from_scheme(&s));
        assert!(audit.pass);
        assert_eq!(audit.signal_mass, vec![Some(r(1, 2)), Some(r(1, 1)), Some(r(1, 2))]);

        let (_, s) = xor();
        let audit = necessity_audit(&Joint::from_scheme(&s));
        assert!(audit.pass);
        assert_eq!(audit.signal_mass, vec![Some(r(1, 1)); 2]);
    }

    #[test]
    fn necessity_audit_flags_overlapping_phi() {
        let (_, s) = xor();
        let merged = merge(&Joint::from_scheme(&s), &[&[0, 1]]);
        let audit = necessity_audit(&merged);
        assert!(audit.dominated);
        assert!(!audit.disjoint);
        assert_eq!(audit.signal_mass, vec![Some(r(2, 1)); 2]);
        assert!(!audit.pass);
    }

    proptest! {
        #[test]
        fn built_schemes_pass_everything(inst in arb_feasible_instance(4, 5)) {
            let s = build_scheme(&inst).unwrap();
            let joint = Joint::from_scheme(&s);
            let rep = verify_joint(&joint, &inst).unwrap();
            prop_assert!(rep.passed());
            prop_assert!(necessity_audit(&joint).pass);
            prop_assert_eq!(joint.mass(), Rational::one());
            let table = decode_table(&joint).unwrap();
            for j in 0..joint.m() {
                for k in 0..joint.p() {
                    prop_assert_eq!(table.get(j, k).is_some(), rep.marginals.q_yz[j][k].is_positive());
                }
            }
        }

        #[test]
        fn merging_signals_keeps_domination(inst in arb_feasible_instance(3, 4), cut in 0usize..8) {
            let s = build_scheme(&inst).unwrap();
            let joint = Joint::from_scheme(&s);
            let split = cut % joint.p().max(1);
            let first: Vec<usize> = (0..=split).collect();
            let rest: Vec<usize> = (split + 1..joint.p()).collect();
            let groups: Vec<&[usize]> = if rest.is_empty() { vec![&first] } else { vec![&first, &rest] };
            let merged = merge(&joint, &groups);
            let rep = verify_joint(&merged, &inst).unwrap();
            let audit = necessity_audit(&merged);
            prop_assert!(audit.dominated);
            if rep.passed() {
                prop_assert!(audit.disjoint);
            }
        }
    }
}
