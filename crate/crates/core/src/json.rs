//! Wire formats shared by the library and the CLI.

use serde::{Deserialize, Serialize};

use crate::combinatorics::Composition;
use crate::error::{Error, Result};
use crate::nsym::{BasisTag, NSymElement};
use crate::qsym::{QBasis, QSymElement};
use crate::rational::{self, Rational};
use crate::tableaux::ImmaculateTableau;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermWire {
    pub index: Vec<u32>,
    pub coeff: String,
}

/// `{"basis": "Q", "terms": [{"index": [2,1], "coeff": "-2"}, …]}`, terms in
/// lexicographic order of their index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementWire {
    pub basis: String,
    pub terms: Vec<TermWire>,
}

fn wire_terms<'a>(terms: impl Iterator<Item = (&'a Composition, &'a Rational)>) -> Vec<TermWire> {
    terms.map(|(k, c)| TermWire { index: k.parts().to_vec(), coeff: rational::format(c) }).collect()
}

fn parse_terms(terms: &[TermWire]) -> Result<Vec<(Composition, Rational)>> {
    terms
        .iter()
        .map(|t| {
            let index = if t.index.is_empty() { Composition::empty() } else { Composition::new(t.index.clone())? };
            Ok((index, rational::parse(&t.coeff)?))
        })
        .collect()
}

impl From<&NSymElement> for ElementWire {
    fn from(a: &NSymElement) -> Self {
        ElementWire { basis: a.basis().name().to_string(), terms: wire_terms(a.terms().iter()) }
    }
}

impl From<&QSymElement> for ElementWire {
    fn from(a: &QSymElement) -> Self {
        ElementWire { basis: a.basis().name().to_string(), terms: wire_terms(a.terms().iter()) }
    }
}

/// Either side of the duality, as decoded from the wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyElement {
    NSym(NSymElement),
    QSym(QSymElement),
}

impl ElementWire {
    pub fn decode(&self) -> Result<AnyElement> {
        let terms = parse_terms(&self.terms)?;
        if let Ok(b) = self.basis.parse::<BasisTag>() {
            return Ok(AnyElement::NSym(NSymElement::from_terms(b, terms)));
        }
        if let Ok(b) = self.basis.parse::<QBasis>() {
            return Ok(AnyElement::QSym(QSymElement::from_terms(b, terms)?));
        }
        Err(Error::InvalidInput(format!("unknown basis {:?}", self.basis)))
    }
}

/// `{"shape": [...], "rows": [[...]], "p": .., "m": .., "weight": ".."}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableauWire {
    pub shape: Vec<u32>,
    pub rows: Vec<Vec<u32>>,
    pub p: u32,
    pub m: u32,
    pub weight: String,
}

impl From<&ImmaculateTableau> for TableauWire {
    fn from(t: &ImmaculateTableau) -> Self {
        TableauWire {
            shape: t.shape().parts().to_vec(),
            rows: t.rows().to_vec(),
            p: t.p_stat(),
            m: t.m_stat(),
            weight: rational::format(&t.weight()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comp;

    #[test]
    fn element_round_trip() {
        let a = NSymElement::from_int_terms(BasisTag::Q, &[(1, &[3, 2]), (-2, &[4, 1]), (2, &[5])]);
        let wire = ElementWire::from(&a);
        let json = serde_json::to_string(&wire).unwrap();
        assert_eq!(
            json,
            r#"{"basis":"Q","terms":[{"index":[3,2],"coeff":"1"},{"index":[4,1],"coeff":"-2"},{"index":[5],"coeff":"2"}]}"#
        );
        let back: ElementWire = serde_json::from_str(&json).unwrap();
        assert_eq!(back.decode().unwrap(), AnyElement::NSym(a));
        let k = QSymElement::basis_element(QBasis::K, comp![2, 1]).unwrap();
        assert_eq!(ElementWire::from(&k).decode().unwrap(), AnyElement::QSym(k));
        let bad = ElementWire { basis: "X".into(), terms: vec![] };
        assert!(bad.decode().is_err());
    }

    #[test]
    fn tableau_wire() {
        let t = ImmaculateTableau::new(vec![vec![1, 1, 2], vec![2, 3, 4, 4], vec![4, 4]]).unwrap();
        let json = serde_json::to_string(&TableauWire::from(&t)).unwrap();
        assert_eq!(json, r#"{"shape":[3,4,2],"rows":[[1,1,2],[2,3,4,4],[4,4]],"p":3,"m":0,"weight":"8"}"#);
    }
}
