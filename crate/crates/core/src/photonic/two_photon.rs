use super::element::{element_unitary, Element};
use super::space::{PhotonicSpace, Polarization};
use crate::bindings::Bindings;
use crate::error::{Error, Result};
use crate::hilbert::{max_abs_diff, CMatrix, Operator};

/// Sends one photon down each arm of a lone device and returns the joint
/// operator on the two photons' internal states, `(other arm) ⊗ (device arm)`.
///
/// The device element is applied to each photon's single-photon sector and
/// the product is restricted to "first photon on the other arm, second
/// photon on the device arm". The result is checked against `𝟙 ⊗ U`
/// entrywise within `1e-12`.
pub fn two_photon_product(device: &Element, u: &Operator) -> Result<Operator> {
    let Element::Device { path, slot } = device else {
        return Err(Error::InvalidNetwork(
            "two-photon demo needs a plain device".into(),
        ));
    };
    if !u.claims_unitary() || !u.is_unitary(1e-10) {
        return Err(Error::NotUnitary {
            deviation: u.unitarity_deviation(),
        });
    }
    let d = u.dim();
    let other = if path == "u" { "l" } else { "u" };
    let space = PhotonicSpace::new([other, path.as_str()], d)?;
    let single = element_unitary(
        device,
        &space,
        &Bindings::new().with(slot.clone(), u.clone()),
    )?;
    let joint = single.tensor(&single);

    let n = space.sector_dim();
    let first = |k: usize| space.index(0, Polarization::H, k);
    let second = |k: usize| space.index(1, Polarization::H, k);
    let index = |k1: usize, k2: usize| first(k1) * n + second(k2);
    let block = CMatrix::from_fn(d * d, d * d, |r, c| {
        joint.matrix()[(index(r / d, r % d), index(c / d, c % d))]
    });

    let expected = Operator::identity(d).tensor(u);
    let err = max_abs_diff(&block, expected.matrix());
    if err > 1e-12 {
        return Err(Error::Consistency(format!(
            "two-photon operator differs from 1 ⊗ U by {err:.3e}"
        )));
    }
    Operator::unitary(block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{haar_state, haar_unitary, DensityMatrix, HilbertSpace, StateVector};
    use crate::rng::seeded_rng;

    #[test]
    fn identity_device() {
        let op = two_photon_product(&Element::device("l", "U"), &Operator::identity(2)).unwrap();
        assert_eq!(op.matrix(), &CMatrix::identity(4, 4));
    }

    #[test]
    fn x_device_on_basis() {
        let op = two_photon_product(&Element::device("l", "U"), &Operator::pauli_x()).unwrap();
        let space = HilbertSpace::new([("u", 2), ("l", 2)]).unwrap();
        let input = StateVector::basis(space.clone(), &[0, 0]).unwrap();
        let out = input.apply(&op).unwrap();
        assert_eq!(out, StateVector::basis(space, &[0, 1]).unwrap());
    }

    #[test]
    fn marginals() {
        let mut rng = seeded_rng(31);
        let u = haar_unitary(3, &mut rng).unwrap();
        let op = two_photon_product(&Element::device("l", "U"), &u).unwrap();
        let a = haar_state(HilbertSpace::single("u", 3).unwrap(), &mut rng);
        let b = haar_state(HilbertSpace::single("l", 3).unwrap(), &mut rng);
        let out = DensityMatrix::from_pure(&a.tensor(&b).unwrap().apply(&op).unwrap());
        let upper = out.partial_trace(&["u"]).unwrap();
        assert!(max_abs_diff(upper.matrix(), DensityMatrix::from_pure(&a).matrix()) < 1e-12);
        let lower = out.partial_trace(&["l"]).unwrap();
        let m = u.matrix() * DensityMatrix::from_pure(&b).matrix() * u.matrix().adjoint();
        assert!(max_abs_diff(lower.matrix(), &m) < 1e-12);
    }

    #[test]
    fn rejects_non_unitary() {
        let bad = Operator::general(CMatrix::zeros(2, 2)).unwrap();
        assert!(two_photon_product(&Element::device("l", "U"), &bad).is_err());
        assert!(two_photon_product(&Element::hwp("l"), &Operator::identity(2)).is_err());
    }
}
