use std::fmt;
use std::str::FromStr;

/// Participant slot shared by behavior classes and SNF entity arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Actor,
    Actee,
    Extra,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Actor, Role::Actee, Role::Extra];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Actor => "Actor",
            Role::Actee => "Actee",
            Role::Extra => "Extra",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Actor" => Ok(Role::Actor),
            "Actee" => Ok(Role::Actee),
            "Extra" => Ok(Role::Extra),
            other => Err(format!("unknown role {other:?}")),
        }
    }
}
