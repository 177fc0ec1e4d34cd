//! Summary of a group: elements, reflections, degrees, character table and
//! fake degrees, in a serialisable form.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::characters::{fake_degrees, irr_characters};
use crate::error::Result;
use crate::groups::ReflectionGroup;
use crate::poly::UniPoly;

/// Key-value pairs serialised as a JSON object in the given order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderedMap<V>(pub Vec<(String, V)>);

impl<V: Serialize> Serialize for OrderedMap<V> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GroupInfo {
    pub group: String,
    pub order: usize,
    pub dim: usize,
    pub field_order: u32,
    pub elements: Vec<String>,
    pub reflections: usize,
    pub reflection_classes: Vec<ReflectionClassInfo>,
    pub hyperplane_orbits: Vec<OrbitInfo>,
    pub degrees: Vec<u32>,
    pub classes: Vec<ClassInfo>,
    pub characters: Vec<CharacterInfo>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionClassInfo {
    pub name: String,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitInfo {
    pub hyperplanes: usize,
    pub e: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub representative: String,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CharacterInfo {
    pub name: String,
    pub degree: usize,
    /// Exact values, one per class.
    pub values: Vec<String>,
    pub fake_degree: String,
    pub b: u32,
}

/// `1 + t^2 + 2t^3` style rendering, lowest degree first.
pub fn format_poly(p: &UniPoly<BigRational>) -> String {
    let mut out = String::new();
    for (k, a) in p.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        }
        let coeff = if mag.is_one() && k > 0 { String::new() } else { mag.to_string() };
        let var = match k {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{k}"),
        };
        out.push_str(&coeff);
        out.push_str(&var);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn group_info(g: &ReflectionGroup) -> Result<GroupInfo> {
    let table = irr_characters(g)?;
    let fakes = fake_degrees(g, &table)?;
    let reflection_classes = g
        .class_names
        .iter()
        .enumerate()
        .map(|(i, n)| ReflectionClassInfo {
            name: n.clone(),
            size: g.reflections.iter().filter(|r| r.class == i).count(),
        })
        .collect();
    Ok(GroupInfo {
        group: g.kind.label(),
        order: g.order(),
        dim: g.dim,
        field_order: g.field_order,
        elements: g.names.clone(),
        reflections: g.reflections.len(),
        reflection_classes,
        hyperplane_orbits: g.orbits.iter().map(|o| OrbitInfo { hyperplanes: o.hyperplanes.len(), e: o.e }).collect(),
        degrees: g.degrees()?,
        classes: table
            .classes
            .iter()
            .map(|c| ClassInfo { representative: g.names[c.rep].clone(), size: c.size() })
            .collect(),
        characters: table
            .irr
            .iter()
            .enumerate()
            .map(|(i, chi)| CharacterInfo {
                name: chi.name.clone(),
                degree: table.degree(i),
                values: chi.values.iter().map(|v| v.to_string()).collect(),
                fake_degree: format_poly(&fakes.polys[i]),
                b: fakes.b_invariant(i),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b2_info() {
        let g = ReflectionGroup::weyl_b2().unwrap();
        let info = group_info(&g).unwrap();
        assert_eq!(info.order, 8);
        assert_eq!(info.degrees, vec![2, 4]);
        assert_eq!(info.characters.len(), 5);
        let chi = info.characters.iter().find(|c| c.name == "chi").unwrap();
        assert_eq!(chi.fake_degree, "t + t^3");
        assert_eq!(chi.b, 1);
    }

    #[test]
    fn poly_rendering() {
        let q = |k: i64| BigRational::from_integer(k.into());
        assert_eq!(format_poly(&UniPoly::new(vec![q(-1), q(0), q(2)])), "-1 + 2t^2");
        assert_eq!(format_poly(&UniPoly::new(vec![q(0), q(-1)])), "-t");
    }
}
