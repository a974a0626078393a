//! Concrete group families with exact normal forms.

pub mod bs1n;
pub mod britton;
pub mod free;
pub mod heisenberg;
pub mod permshift;

use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported element: {0}")]
    UnsupportedElement(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
}

/// Group selector strings used by the command line:
/// `heisenberg`, `bs1n:<n>`, `bsmn:<m>:<n>`, `lamp-sinf`, `free:<rank>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupSpec {
    Heisenberg,
    Bs1n(u32),
    BsMn(u32, u32),
    LampSinf,
    Free(u32),
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<GroupSpec, GroupError> {
        let parts: Vec<&str> = s.split(':').collect();
        let parse_u32 = |v: &str| {
            v.parse::<u32>()
                .map_err(|_| GroupError::InvalidParameter(format!("bad integer {v:?} in {s:?}")))
        };
        match parts.as_slice() {
            ["heisenberg"] => Ok(GroupSpec::Heisenberg),
            ["lamp-sinf"] => Ok(GroupSpec::LampSinf),
            ["bs1n", n] => {
                let n = parse_u32(n)?;
                if n < 2 {
                    return Err(GroupError::InvalidParameter(
                        "bs1n needs base n >= 2".into(),
                    ));
                }
                Ok(GroupSpec::Bs1n(n))
            }
            ["bsmn", m, n] => {
                let (m, n) = (parse_u32(m)?, parse_u32(n)?);
                if m < 1 || n < 1 {
                    return Err(GroupError::InvalidParameter(
                        "bsmn needs m,n >= 1".into(),
                    ));
                }
                Ok(GroupSpec::BsMn(m, n))
            }
            ["free", r] => {
                let r = parse_u32(r)?;
                if !(1..=26).contains(&r) {
                    return Err(GroupError::InvalidParameter(
                        "free rank must be in 1..=26".into(),
                    ));
                }
                Ok(GroupSpec::Free(r))
            }
            _ => Err(GroupError::InvalidParameter(format!(
                "unknown group selector {s:?}"
            ))),
        }
    }
}
