//! The instance file format: one JSON document per instance.
//!
//! ```json
//! {
//!   "n": 2, "m": 2, "ell": 2,
//!   "disapprovals": [[[1], [1]], [[2], [2]]],
//!   "availability": [[1, 2], [1, 2]],
//!   "constraints": [[2, 1]]
//! }
//! ```
//!
//! `disapprovals[i][k]` lists agent `i+1`'s disapproved projects at timestep
//! `k+1`. Project indices are 1-based. `availability` and `constraints` are
//! optional.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ConstraintSet, Instance};
use crate::projects::ProjectSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub disapprovals: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub availability: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<Vec<[usize; 2]>>,
}

fn to_set(indices: &[usize], m: usize, what: &str) -> Result<ProjectSet> {
    indices
        .iter()
        .map(|&p| {
            if p == 0 || p > m {
                Err(Error::validation(format!(
                    "{what}: project index {p} out of range 1..={m}"
                )))
            } else {
                Ok(p - 1)
            }
        })
        .collect()
}

fn to_list(set: &ProjectSet) -> Vec<usize> {
    set.iter().map(|p| p + 1).collect()
}

impl InstanceFile {
    /// Serializable form of an instance. Availability is written only when
    /// some timestep restricts its menu.
    pub fn from_instance(instance: &Instance, constraints: Option<&ConstraintSet>) -> Self {
        let disapprovals = (0..instance.n())
            .map(|i| {
                (0..instance.ell())
                    .map(|k| to_list(instance.disapproval_set(i, k)))
                    .collect()
            })
            .collect();
        let availability = instance.has_restricted_availability().then(|| {
            (0..instance.ell())
                .map(|k| to_list(instance.available(k)))
                .collect()
        });
        InstanceFile {
            n: instance.n(),
            m: instance.m(),
            ell: instance.ell(),
            disapprovals,
            availability,
            constraints: constraints.map(|cs| cs.pairs().iter().map(|c| [c.t, c.lambda]).collect()),
        }
    }

    /// Converts to the validated in-memory form. A missing `constraints`
    /// field yields an empty constraint set.
    pub fn into_parts(self) -> Result<(Instance, ConstraintSet)> {
        let m = self.m;
        let mut rows = Vec::with_capacity(self.disapprovals.len());
        for (i, row) in self.disapprovals.iter().enumerate() {
            let mut sets = Vec::with_capacity(row.len());
            for (k, list) in row.iter().enumerate() {
                sets.push(to_set(
                    list,
                    m,
                    &format!("agent {} timestep {}", i + 1, k + 1),
                )?);
            }
            rows.push(sets);
        }
        let availability = match &self.availability {
            None => None,
            Some(avail) => Some(
                avail
                    .iter()
                    .enumerate()
                    .map(|(k, list)| {
                        to_set(list, m, &format!("availability at timestep {}", k + 1))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let instance = Instance::new(self.n, m, self.ell, rows, availability)?;
        let constraints = match self.constraints {
            None => ConstraintSet::empty(),
            Some(pairs) => ConstraintSet::new(pairs.into_iter().map(|[t, l]| (t, l)).collect())?,
        };
        constraints.validate_for(&instance)?;
        Ok((instance, constraints))
    }
}

pub fn parse_instance(text: &str) -> Result<(Instance, ConstraintSet)> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_parts()
}

pub fn instance_to_json(instance: &Instance, constraints: Option<&ConstraintSet>) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(instance, constraints))
        .expect("instance files always serialize")
}

/// Parses an inline constraint literal such as `[[2,1],[4,2]]`.
pub fn parse_constraints(text: &str) -> Result<ConstraintSet> {
    let pairs: Vec<[usize; 2]> =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("constraints: {e}")))?;
    ConstraintSet::new(pairs.into_iter().map(|[t, l]| (t, l)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const THM7: &str = r#"{
        "n": 3, "m": 2, "ell": 2,
        "disapprovals": [[[1],[1]], [[2],[2]], [[2],[2]]],
        "constraints": [[2, 1]]
    }"#;

    #[test]
    fn parses_one_based_indices() {
        let (inst, cs) = parse_instance(THM7).unwrap();
        assert_eq!((inst.n(), inst.m(), inst.ell()), (3, 2, 2));
        assert!(inst.disapproves(0, 0, 0));
        assert!(inst.disapproves(2, 1, 1));
        assert_eq!(cs, ConstraintSet::single(2, 1));
    }

    #[test]
    fn round_trip() {
        let (inst, cs) = parse_instance(THM7).unwrap();
        let text = instance_to_json(&inst, Some(&cs));
        assert_eq!(parse_instance(&text).unwrap(), (inst, cs));
    }

    #[test]
    fn rejects_zero_and_out_of_range() {
        let zero = r#"{"n":1,"m":2,"ell":1,"disapprovals":[[[0]]]}"#;
        assert!(matches!(parse_instance(zero), Err(Error::Validation(_))));
        let big = r#"{"n":1,"m":2,"ell":1,"disapprovals":[[[3]]]}"#;
        assert!(matches!(parse_instance(big), Err(Error::Validation(_))));
        let unknown = r#"{"n":1,"m":2,"ell":1,"disapprovals":[[[1]]],"extra":1}"#;
        assert!(matches!(parse_instance(unknown), Err(Error::Parse(_))));
        let bad_cs = r#"{"n":1,"m":2,"ell":1,"disapprovals":[[[1]]],"constraints":[[2,0]]}"#;
        assert!(matches!(parse_instance(bad_cs), Err(Error::Validation(_))));
    }

    #[test]
    fn availability_round_trips() {
        let text = r#"{"n":1,"m":2,"ell":2,"disapprovals":[[[1],[]]],"availability":[[1],[1,2]]}"#;
        let (inst, _) = parse_instance(text).unwrap();
        assert!(!inst.available(0).contains(1));
        let back = InstanceFile::from_instance(&inst, None);
        assert_eq!(back.availability, Some(vec![vec![1], vec![1, 2]]));
    }

    #[test]
    fn inline_constraints() {
        assert_eq!(parse_constraints("[[2,1],[4,2]]").unwrap().len(), 2);
        assert!(parse_constraints("[[4,2],[2,1]]").is_err());
        assert!(parse_constraints("nope").is_err());
    }
}
