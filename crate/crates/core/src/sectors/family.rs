//! On-disk format for families of localized endomorphisms.
//!
//! Each entry names a sector and its region and gives exactly one of
//! - `unitary`: a full matrix, so the sector is `Ad_u`;
//! - `gates`: one single-site gate letter per site (`I X Y Z S H`), with
//!   optional `controlled_z` pairs, multiplied into `u`;
//! - `pin`: a state pullback on a diagonal net fixing the listed site
//!   digits.
//!
//! Localization is not checked at load time so that faulty families can be
//! fed to the validators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::endo::{Endo, LocalizedEndo, Unitary};
use super::net::{from_digits, to_digits, MatrixNet};
use super::pfa::controlled_z;
use super::SectorError;
use crate::matrix::{pauli, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectorJson {
    pub name: String,
    pub region: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unitary: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gates: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub controlled_z: Vec<[usize; 2]>,
    /// Site (1-based, as text) to fixed digit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pin: Option<BTreeMap<String, usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub sectors: Vec<SectorJson>,
}

fn gate(letter: char) -> Option<Matrix> {
    Some(match letter {
        'I' => Matrix::identity(2),
        'X' => pauli::x(),
        'Y' => pauli::y(),
        'Z' => pauli::z(),
        'S' => pauli::s(),
        'H' => Matrix::from_ints(&[&[(1, 0), (1, 0)], &[(1, 0), (-1, 0)]]),
        _ => return None,
    })
}

fn bad(name: &str, msg: impl std::fmt::Display) -> SectorError {
    SectorError::Json(format!("sector {name:?}: {msg}"))
}

fn gate_unitary(net: &MatrixNet, s: &SectorJson, gates: &str) -> Result<Matrix, SectorError> {
    if net.local_dim() != 2 {
        return Err(bad(&s.name, "gate strings need qubit sites"));
    }
    let letters: Vec<char> = gates.chars().collect();
    if letters.len() != net.sites() {
        return Err(bad(&s.name, format!("expected {} gate letters, got {}", net.sites(), letters.len())));
    }
    let mut u = Matrix::identity(net.hilbert_dim());
    for (k, &l) in letters.iter().enumerate() {
        let g = gate(l).ok_or_else(|| bad(&s.name, format!("unknown gate {l:?}")))?;
        if l != 'I' {
            u = u.mul(&net.embed(k + 1, &g));
        }
    }
    for &[a, b] in &s.controlled_z {
        if a == 0 || b == 0 || a > net.sites() || b > net.sites() || a == b {
            return Err(bad(&s.name, format!("bad controlled_z pair ({a}, {b})")));
        }
        u = u.mul(&controlled_z(net, a, b));
    }
    Ok(u)
}

fn pinned(net: &MatrixNet, s: &SectorJson, pins: &BTreeMap<String, usize>) -> Result<Endo, SectorError> {
    let mut fixed = Vec::new();
    for (site, &digit) in pins {
        let k: usize = site.parse().map_err(|_| bad(&s.name, format!("bad site {site:?}")))?;
        if k == 0 || k > net.sites() || digit >= net.local_dim() {
            return Err(bad(&s.name, format!("pin {site}={digit} out of range")));
        }
        fixed.push((k - 1, digit));
    }
    let (l, d) = (net.sites(), net.local_dim());
    Endo::pullback(net, |j| {
        let mut digits = to_digits(j, l, d);
        for &(k, v) in &fixed {
            digits[k] = v;
        }
        from_digits(&digits, d)
    })
}

impl SectorJson {
    pub fn load(&self, net: &MatrixNet) -> Result<LocalizedEndo, SectorError> {
        let region = net.region(&self.region)?;
        let given = [self.unitary.is_some(), self.gates.is_some(), self.pin.is_some()];
        if given.iter().filter(|&&b| b).count() != 1 {
            return Err(bad(&self.name, "give exactly one of unitary, gates, pin"));
        }
        if !self.controlled_z.is_empty() && self.gates.is_none() {
            return Err(bad(&self.name, "controlled_z needs gates"));
        }
        let endo = if let Some(m) = &self.unitary {
            if m.dim() != net.hilbert_dim() {
                return Err(SectorError::Dimension { expected: net.hilbert_dim(), got: m.dim() });
            }
            Endo::Inner(Unitary::new(m.clone())?)
        } else if let Some(g) = &self.gates {
            Endo::Inner(Unitary::new(gate_unitary(net, self, g)?)?)
        } else {
            pinned(net, self, self.pin.as_ref().expect("checked above"))?
        };
        Ok(LocalizedEndo::declare(self.name.clone(), region, endo))
    }

    /// Inner sectors only; general endomorphisms have no compact form.
    pub fn from_sector(net: &MatrixNet, rho: &LocalizedEndo) -> Option<Self> {
        Some(SectorJson {
            name: rho.name.clone(),
            region: net.region_name(rho.region).to_string(),
            unitary: Some(rho.endo.unitary()?.matrix().clone()),
            gates: None,
            controlled_z: Vec::new(),
            pin: None,
        })
    }
}

impl FamilyJson {
    pub fn load(&self, net: &MatrixNet) -> Result<Vec<LocalizedEndo>, SectorError> {
        let mut seen = std::collections::BTreeSet::new();
        self.sectors
            .iter()
            .map(|s| {
                if !seen.insert(s.name.as_str()) {
                    return Err(bad(&s.name, "duplicate name"));
                }
                s.load(net)
            })
            .collect()
    }

    pub fn parse(s: &str) -> Result<Self, SectorError> {
        serde_json::from_str(s).map_err(|e| SectorError::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sectors::endo::check_localized;
    use crate::sectors::pfa::qubit_family;

    #[test]
    fn gate_strings_match_bundled_family() {
        let net = MatrixNet::qubit_chain(4);
        let j = FamilyJson::parse(
            r#"{"sectors": [
                {"name": "x1", "region": "[1,1]", "gates": "XIII"},
                {"name": "y3x4", "region": "[3,4]", "gates": "IIYX"},
                {"name": "cz12", "region": "[1,2]", "gates": "IIII", "controlled_z": [[1, 2]]}
            ]}"#,
        )
        .unwrap();
        let fam = j.load(&net).unwrap();
        let bundled = qubit_family(&net);
        for rho in &fam {
            let b = bundled.iter().find(|b| b.name == rho.name).unwrap();
            assert!(rho.endo.same(&b.endo, &net), "{}", rho.name);
            assert!(check_localized(&net, rho).valid);
        }
    }

    #[test]
    fn loader_accepts_unlocalized_and_rejects_malformed() {
        let net = MatrixNet::qubit_chain(3);
        let j = FamilyJson::parse(r#"{"sectors": [{"name": "x3", "region": "[1,1]", "gates": "IIX"}]}"#).unwrap();
        let rho = &j.load(&net).unwrap()[0];
        assert!(!check_localized(&net, rho).valid);
        for bad in [
            r#"{"sectors": [{"name": "a", "region": "[1,1]"}]}"#,
            r#"{"sectors": [{"name": "a", "region": "[1,1]", "gates": "XI"}]}"#,
            r#"{"sectors": [{"name": "a", "region": "[1,1]", "gates": "QII"}]}"#,
            r#"{"sectors": [{"name": "a", "region": "[9,9]", "gates": "XII"}]}"#,
            r#"{"sectors": [{"name": "a", "region": "[1,1]", "pin": {"1": 0}}]}"#,
            r#"{"sectors": [{"name": "a", "region": "[1,1]", "gates": "XII"}, {"name": "a", "region": "[1,1]", "gates": "XII"}]}"#,
        ] {
            assert!(FamilyJson::parse(bad).unwrap().load(&net).is_err(), "{bad}");
        }
        assert!(FamilyJson::parse(r#"{"sectors": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn pins_and_round_trip() {
        let (net, collapse) = crate::sectors::equivariance::collapse_example();
        let j =
            FamilyJson::parse(r#"{"sectors": [{"name": "collapse1", "region": "[1,1]", "pin": {"1": 0}}]}"#).unwrap();
        assert!(j.load(&net).unwrap()[0].endo.same(&collapse.endo, &net));

        let q = MatrixNet::qubit_chain(4);
        let fam = qubit_family(&q);
        let out = FamilyJson { sectors: fam.iter().map(|r| SectorJson::from_sector(&q, r).unwrap()).collect() };
        let text = serde_json::to_string(&out).unwrap();
        let back = FamilyJson::parse(&text).unwrap().load(&q).unwrap();
        assert!(fam.iter().zip(&back).all(|(a, b)| a.name == b.name && a.endo.same(&b.endo, &q)));
    }
}
