use serde::{Deserialize, Serialize};

use super::space::{PhotonicSpace, Polarization};
use crate::bindings::Bindings;
use crate::error::{Error, Result};
use crate::hilbert::{subspace_embed, CMatrix, Operator, SubspaceEmbedding, C64};

/// One stage of an optical network.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Element {
    /// Polarizing beam splitter. `H` entering `in_ports[i]` leaves through
    /// `out_ports[i]`; `V` leaves through `out_ports[1 - i]`.
    Pbs {
        in_ports: [String; 2],
        out_ports: [String; 2],
    },
    /// Half-wave plate exchanging `H` and `V` on one path.
    Hwp { path: String },
    /// Placement of the unknown device `slot` on `path`; acts on the internal
    /// degree of freedom only.
    Device { path: String, slot: String },
    /// A device preceded by a non-demolition photon-number measurement of its
    /// path.
    BigBrotherDevice { path: String, slot: String },
    /// The beam passes again through the device placed earlier as `slot`.
    Revisit { path: String, slot: String },
    /// Path relabeling: light on `paths[i]` continues on `permutation[i]`.
    Reroute { permutation: Vec<String> },
}

impl Element {
    pub fn pbs(in_ports: [&str; 2], out_ports: [&str; 2]) -> Self {
        Element::Pbs {
            in_ports: in_ports.map(String::from),
            out_ports: out_ports.map(String::from),
        }
    }

    pub fn hwp(path: &str) -> Self {
        Element::Hwp { path: path.into() }
    }

    pub fn device(path: &str, slot: &str) -> Self {
        Element::Device {
            path: path.into(),
            slot: slot.into(),
        }
    }

    pub fn big_brother(path: &str, slot: &str) -> Self {
        Element::BigBrotherDevice {
            path: path.into(),
            slot: slot.into(),
        }
    }

    pub fn revisit(path: &str, slot: &str) -> Self {
        Element::Revisit {
            path: path.into(),
            slot: slot.into(),
        }
    }

    pub fn reroute(permutation: &[&str]) -> Self {
        Element::Reroute {
            permutation: permutation.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// `(path, slot)` for elements through which light meets a device.
    pub fn device_pass(&self) -> Option<(&str, &str)> {
        match self {
            Element::Device { path, slot }
            | Element::BigBrotherDevice { path, slot }
            | Element::Revisit { path, slot } => Some((path, slot)),
            _ => None,
        }
    }

    /// Checks port labels and routing structure against `space`.
    pub(crate) fn validate(&self, space: &PhotonicSpace) -> Result<()> {
        match self {
            Element::Pbs { .. } => pbs_mode_map(self, space).map(|_| ()),
            Element::Hwp { path } => space.path_index(path).map(|_| ()),
            Element::Device { path, .. }
            | Element::BigBrotherDevice { path, .. }
            | Element::Revisit { path, .. } => space.path_index(path).map(|_| ()),
            Element::Reroute { .. } => reroute_map(self, space).map(|_| ()),
        }
    }
}

type Mode = (usize, Polarization);

/// Full mode permutation of a PBS on `(path, pol)` pairs, as (from, to).
fn pbs_mode_map(e: &Element, space: &PhotonicSpace) -> Result<Vec<(Mode, Mode)>> {
    let Element::Pbs {
        in_ports,
        out_ports,
    } = e
    else {
        unreachable!()
    };
    let ins = [
        space.path_index(&in_ports[0])?,
        space.path_index(&in_ports[1])?,
    ];
    let outs = [
        space.path_index(&out_ports[0])?,
        space.path_index(&out_ports[1])?,
    ];
    if ins[0] == ins[1] || outs[0] == outs[1] {
        return Err(Error::InvalidNetwork("PBS ports must be distinct".into()));
    }
    let mut map = Vec::with_capacity(8);
    for k in 0..2 {
        map.push(((ins[k], Polarization::H), (outs[k], Polarization::H)));
        map.push(((ins[k], Polarization::V), (outs[1 - k], Polarization::V)));
    }
    let same = (ins[0] == outs[0] && ins[1] == outs[1]) || (ins[0] == outs[1] && ins[1] == outs[0]);
    let disjoint = !outs.contains(&ins[0]) && !outs.contains(&ins[1]);
    if disjoint {
        // Light arriving from the output side is routed back to the inputs.
        let back: Vec<_> = map.iter().map(|&(from, to)| (to, from)).collect();
        map.extend(back);
    } else if !same {
        return Err(Error::InvalidNetwork(format!(
            "PBS ports {in_ports:?} -> {out_ports:?} leave a dangling port"
        )));
    }
    Ok(map)
}

fn reroute_map(e: &Element, space: &PhotonicSpace) -> Result<Vec<usize>> {
    let Element::Reroute { permutation } = e else {
        unreachable!()
    };
    if permutation.len() != space.paths().len() {
        return Err(Error::InvalidNetwork(format!(
            "reroute lists {} paths, space has {}",
            permutation.len(),
            space.paths().len()
        )));
    }
    let targets = permutation
        .iter()
        .map(|p| space.path_index(p))
        .collect::<Result<Vec<_>>>()?;
    for (i, t) in targets.iter().enumerate() {
        if targets[..i].contains(t) {
            return Err(Error::InvalidNetwork("reroute is not a permutation".into()));
        }
    }
    Ok(targets)
}

/// Single-photon-sector unitary of one element.
///
/// For [`Element::BigBrotherDevice`] this is the unitary part only; the
/// measurement is applied by [`propagate`](super::propagate).
pub fn element_unitary(
    e: &Element,
    space: &PhotonicSpace,
    bindings: &Bindings,
) -> Result<Operator> {
    let n = space.sector_dim();
    let d = space.internal_dim();
    let one = C64::new(1.0, 0.0);
    match e {
        Element::Pbs { .. } => {
            let map = pbs_mode_map(e, space)?;
            let mut m = CMatrix::identity(n, n);
            for &((p, pol), _) in &map {
                for k in 0..d {
                    let i = space.index(p, pol, k);
                    m[(i, i)] = C64::new(0.0, 0.0);
                }
            }
            for &((p, pol), (q, qpol)) in &map {
                for k in 0..d {
                    m[(space.index(q, qpol, k), space.index(p, pol, k))] = one;
                }
            }
            Ok(Operator::unitary_unchecked(m))
        }
        Element::Hwp { path } => {
            let p = space.path_index(path)?;
            let flip = Operator::pauli_x().tensor(&Operator::identity(d));
            subspace_embed(
                &flip,
                &SubspaceEmbedding::DirectSumBlock {
                    block_indices: space.path_block(p),
                    total_dim: n,
                },
            )
        }
        Element::Device { path, slot }
        | Element::BigBrotherDevice { path, slot }
        | Element::Revisit { path, slot } => {
            let p = space.path_index(path)?;
            let u = bindings.unitary(slot, d)?;
            subspace_embed(
                &Operator::identity(2).tensor(u),
                &SubspaceEmbedding::DirectSumBlock {
                    block_indices: space.path_block(p),
                    total_dim: n,
                },
            )
        }
        Element::Reroute { .. } => {
            let targets = reroute_map(e, space)?;
            let mut m = CMatrix::zeros(n, n);
            for (p, &q) in targets.iter().enumerate() {
                for pol in [Polarization::H, Polarization::V] {
                    for k in 0..d {
                        m[(space.index(q, pol, k), space.index(p, pol, k))] = one;
                    }
                }
            }
            Ok(Operator::unitary_unchecked(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{haar_unitary, is_unitary, CVector, StateVector};
    use crate::rng::seeded_rng;

    fn space(d: usize) -> PhotonicSpace {
        PhotonicSpace::new(["u", "l"], d).unwrap()
    }

    fn basis(s: &PhotonicSpace, path: usize, pol: Polarization, k: usize) -> CVector {
        let mut v = CVector::zeros(s.sector_dim());
        v[s.index(path, pol, k)] = C64::new(1.0, 0.0);
        v
    }

    #[test]
    fn pbs_transmits_h_reflects_v() {
        let s = space(2);
        let pbs =
            element_unitary(&Element::pbs(["u", "l"], ["u", "l"]), &s, &Bindings::new()).unwrap();
        for k in 0..2 {
            let h = pbs.matrix() * basis(&s, 0, Polarization::H, k);
            assert_eq!(h, basis(&s, 0, Polarization::H, k));
            let v = pbs.matrix() * basis(&s, 0, Polarization::V, k);
            assert_eq!(v, basis(&s, 1, Polarization::V, k));
            let v = pbs.matrix() * basis(&s, 1, Polarization::V, k);
            assert_eq!(v, basis(&s, 0, Polarization::V, k));
        }
    }

    #[test]
    fn pbs_with_disjoint_outputs() {
        let s = PhotonicSpace::new(["a", "b", "c", "e"], 1).unwrap();
        let e = Element::pbs(["a", "b"], ["c", "e"]);
        let pbs = element_unitary(&e, &s, &Bindings::new()).unwrap();
        assert!(is_unitary(&pbs, 1e-12));
        assert_eq!(
            pbs.matrix() * basis(&s, 0, Polarization::H, 0),
            basis(&s, 2, Polarization::H, 0)
        );
        assert_eq!(
            pbs.matrix() * basis(&s, 0, Polarization::V, 0),
            basis(&s, 3, Polarization::V, 0)
        );
    }

    #[test]
    fn pbs_rejects_dangling_port() {
        let s = PhotonicSpace::new(["a", "b", "c"], 1).unwrap();
        let e = Element::pbs(["a", "b"], ["a", "c"]);
        assert!(matches!(e.validate(&s), Err(Error::InvalidNetwork(_))));
        assert!(Element::pbs(["a", "zz"], ["a", "b"]).validate(&s).is_err());
    }

    #[test]
    fn hwp_flips_polarization_only() {
        let mut rng = seeded_rng(0);
        let s = space(3);
        let psi = crate::hilbert::haar_state(s.internal_space(), &mut rng);
        let zero = CVector::zeros(3);
        let input = s.state_on_path("u", &zero, psi.amps()).unwrap();
        let hwp = element_unitary(&Element::hwp("u"), &s, &Bindings::new()).unwrap();
        let out = input.apply(&hwp).unwrap();
        let want = s.state_on_path("u", psi.amps(), &zero).unwrap();
        assert_eq!(out, want);
        // Other path untouched.
        let other = StateVector::new(s.hilbert(), basis(&s, 1, Polarization::V, 0)).unwrap();
        assert_eq!(other.apply(&hwp).unwrap(), other);
    }

    #[test]
    fn identity_device_is_identity() {
        let s = space(2);
        let b = Bindings::new().with("U", Operator::identity(2));
        let dev = element_unitary(&Element::device("l", "U"), &s, &b).unwrap();
        assert_eq!(dev.matrix(), &CMatrix::identity(8, 8));
    }

    #[test]
    fn device_errors() {
        let s = space(2);
        let e = Element::device("l", "U");
        assert!(matches!(
            element_unitary(&e, &s, &Bindings::new()),
            Err(Error::UnboundSlot(_))
        ));
        let b = Bindings::new().with("U", Operator::identity(3));
        assert!(matches!(
            element_unitary(&e, &s, &b),
            Err(Error::BindingDimension { .. })
        ));
        let bad = Operator::general(CMatrix::identity(2, 2) * C64::new(0.5, 0.0)).unwrap();
        let b = Bindings::new().with("U", bad);
        assert!(matches!(
            element_unitary(&e, &s, &b),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn all_elements_unitary() {
        let mut rng = seeded_rng(17);
        let s = PhotonicSpace::new(["u", "l", "x"], 3).unwrap();
        let b = Bindings::new().with("U", haar_unitary(3, &mut rng).unwrap());
        let elements = [
            Element::pbs(["u", "l"], ["l", "u"]),
            Element::hwp("x"),
            Element::device("u", "U"),
            Element::big_brother("l", "U"),
            Element::revisit("x", "U"),
            Element::reroute(&["l", "x", "u"]),
        ];
        for e in &elements {
            let u = element_unitary(e, &s, &b).unwrap();
            assert!(is_unitary(&u, 1e-10), "{e:?}");
        }
    }

    #[test]
    fn reroute_validation() {
        let s = space(1);
        assert!(Element::reroute(&["u", "u"]).validate(&s).is_err());
        assert!(Element::reroute(&["u"]).validate(&s).is_err());
        assert!(Element::reroute(&["l", "u"]).validate(&s).is_ok());
    }
}
