//! JSON function specs: `{"group": "...", "cells": [{"lo": [...], "hi": [...], "value": v}]}`.

use serde::{Deserialize, Serialize};

use super::SimpleFunction;
use crate::boxes::HalfOpenBox;
use crate::error::{Error, Result};
use crate::group::{GroupDescriptor, GroupKind};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub group: GroupKind,
    pub cells: Vec<CellSpec>,
}

impl FunctionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Spec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("function spec serializes")
    }

    pub fn build(&self) -> Result<SimpleFunction<f64>> {
        let group = GroupDescriptor::of_kind(self.group);
        let cells = self
            .cells
            .iter()
            .map(|c| Ok((HalfOpenBox::new(c.lo.clone(), c.hi.clone())?, c.value)))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Spec(e.to_string()))?;
        SimpleFunction::new(group, cells).map_err(|e| Error::Spec(e.to_string()))
    }
}

impl From<&SimpleFunction<f64>> for FunctionSpec {
    fn from(f: &SimpleFunction<f64>) -> Self {
        FunctionSpec {
            group: f.group().kind,
            cells: f
                .pieces()
                .iter()
                .map(|p| CellSpec { lo: p.cell.lo.clone(), hi: p.cell.hi.clone(), value: p.value })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_measures_with_haar_scale() {
        let text = r#"{"group": "real-line", "cells": [{"lo": [0], "hi": [2], "value": 3}]}"#;
        let f = FunctionSpec::from_json(text).unwrap().build().unwrap();
        assert_eq!(f.support_measure(), 1.0);
        let back = FunctionSpec::from(&f);
        assert_eq!(FunctionSpec::from_json(&back.to_json()).unwrap(), back);
    }

    #[test]
    fn malformed_specs_are_spec_errors() {
        for bad in [
            r#"{"group": "torus", "cells": []}"#,
            r#"{"group": "real-line", "cells": [{"lo": [1], "hi": [0], "value": 1}]}"#,
            r#"{"group": "heisenberg", "cells": [{"lo": [0], "hi": [1], "value": 1}]}"#,
            "not json",
        ] {
            assert!(matches!(FunctionSpec::from_json(bad).and_then(|s| s.build()), Err(Error::Spec(_))), "{bad}");
        }
    }
}
