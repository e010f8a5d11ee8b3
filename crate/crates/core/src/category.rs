use core::fmt;
use core::str::FromStr;

/// Tourist activity categories, a subset of the Foursquare venue taxonomy.
///
/// The declaration order is the canonical order used for weight-matrix
/// columns, score vectors and tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActivityCategory {
    OutdoorsRecreation,
    ArtsEntertainment,
    Food,
    Residence,
    Nightlife,
}

impl ActivityCategory {
    pub const ALL: [ActivityCategory; 5] = [
        ActivityCategory::OutdoorsRecreation,
        ActivityCategory::ArtsEntertainment,
        ActivityCategory::Food,
        ActivityCategory::Residence,
        ActivityCategory::Nightlife,
    ];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Wire name used in catalog, trace and command output.
    pub const fn as_str(self) -> &'static str {
        match self {
            ActivityCategory::OutdoorsRecreation => "outdoors_recreation",
            ActivityCategory::ArtsEntertainment => "arts_entertainment",
            ActivityCategory::Food => "food",
            ActivityCategory::Residence => "residence",
            ActivityCategory::Nightlife => "nightlife",
        }
    }

    /// Two-letter column label used in weight-matrix files.
    pub const fn short(self) -> &'static str {
        match self {
            ActivityCategory::OutdoorsRecreation => "or",
            ActivityCategory::ArtsEntertainment => "ae",
            ActivityCategory::Food => "fd",
            ActivityCategory::Residence => "rs",
            ActivityCategory::Nightlife => "nl",
        }
    }
}

impl fmt::Display for ActivityCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownCategory;

impl fmt::Display for UnknownCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown activity category")
    }
}

impl FromStr for ActivityCategory {
    type Err = UnknownCategory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or(UnknownCategory)
    }
}
