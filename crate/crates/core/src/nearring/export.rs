use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::Nearring;
use crate::error::{Error, Result};
use crate::pgroup::{GroupSpec, GroupTable};

/// On-disk form of a nearring: `{group, identity, mul}` with `mul[x][y]`
/// the index of `x*y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearringFile {
    pub group: GroupSpec,
    pub identity: Option<usize>,
    pub mul: Vec<Vec<u16>>,
}

impl NearringFile {
    pub fn from_nearring(nr: &Nearring) -> Self {
        let n = nr.order();
        NearringFile {
            group: nr.group().spec().clone(),
            identity: nr.identity(),
            mul: (0..n).map(|x| nr.row(x).to_vec()).collect(),
        }
    }

    pub fn into_nearring(self) -> Result<Nearring> {
        let table = Arc::new(GroupTable::new(self.group.clone())?);
        self.into_nearring_on(table)
    }

    /// Like [`into_nearring`](Self::into_nearring) but reusing a group table
    /// that must carry the same presentation.
    pub fn into_nearring_on(self, table: Arc<GroupTable>) -> Result<Nearring> {
        if table.spec() != &self.group {
            return Err(Error::MalformedTable("file group differs from the given table".into()));
        }
        let n = table.order();
        if self.mul.len() != n || self.mul.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable(format!("mul must be a {n}x{n} array")));
        }
        let nr = Nearring::new(table, self.mul.into_iter().flatten().collect())?;
        if nr.identity() != self.identity {
            return Err(Error::MalformedTable(format!(
                "declared identity {:?} but the table has {:?}",
                self.identity,
                nr.identity()
            )));
        }
        Ok(nr)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let f: NearringFile = serde_json::from_str(s)?;
        f.group.validate()?;
        Ok(f)
    }
}

impl Nearring {
    pub fn to_json(&self) -> Result<String> {
        NearringFile::from_nearring(self).to_json()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        NearringFile::from_json(s)?.into_nearring()
    }

    /// Multiplication table as CSV, rows and columns labelled by coordinates.
    pub fn to_csv(&self) -> String {
        let g = self.group();
        let n = g.order();
        let label = |x: usize| format!("\"{}\"", g.element(x));
        let mut s = String::from("x\\y");
        for y in 0..n {
            s.push(',');
            s.push_str(&label(y));
        }
        s.push('\n');
        for x in 0..n {
            s.push_str(&label(x));
            for y in 0..n {
                let _ = write!(s, ",{}", self.mul(x, y));
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pgroup::catalog;

    #[test]
    fn json_round_trip() {
        let g = Arc::new(GroupTable::new(catalog("Cp2_cyclic", 3).unwrap()).unwrap());
        let nr = Nearring::from_fn(g, |x, y| x * y % 9).unwrap();
        let back = Nearring::from_json(&nr.to_json().unwrap()).unwrap();
        assert_eq!(back, nr);
        assert_eq!(back.identity(), Some(1));
    }

    #[test]
    fn bad_files_are_rejected() {
        let g = Arc::new(GroupTable::new(catalog("Cp", 3).unwrap()).unwrap());
        let nr = Nearring::from_fn(g, |x, y| x * y % 3).unwrap();
        let mut f = NearringFile::from_nearring(&nr);
        f.identity = Some(2);
        assert!(matches!(f.clone().into_nearring(), Err(Error::MalformedTable(_))));
        f.identity = Some(1);
        f.mul[1].pop();
        assert!(matches!(f.into_nearring(), Err(Error::MalformedTable(_))));
        assert!(matches!(NearringFile::from_json("{\"group\": 1}"), Err(Error::Json(_))));
    }

    #[test]
    fn csv_shape() {
        let g = Arc::new(GroupTable::new(catalog("Cp", 3).unwrap()).unwrap());
        let nr = Nearring::from_fn(g, |x, y| x * y % 3).unwrap();
        let csv = nr.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "x\\y,\"(0)\",\"(1)\",\"(2)\"");
        assert_eq!(lines[3], "\"(2)\",0,2,1");
    }
}
