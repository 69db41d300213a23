//! Japanese post-nominal particles and their canonical keys.
//!
//! Annotated corpora may spell particles in Japanese script (`は`) or in the
//! romanized key form (`ha`). Both are folded into [`Particle`] on load, and
//! only the canonical key is ever written back out.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Canonical particle key attached to a mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Particle {
    Ha,
    Ga,
    No,
    To,
    Deha,
    Niyoruto,
    Kara,
    WoTsuuji,
    TonoAidade,
    Other,
}

/// Script spellings and their canonical particles.
const SCRIPT_TABLE: &[(&str, Particle)] = &[
    ("は", Particle::Ha),
    ("が", Particle::Ga),
    ("の", Particle::No),
    ("と", Particle::To),
    ("では", Particle::Deha),
    ("によると", Particle::Niyoruto),
    ("から", Particle::Kara),
    ("を通じ", Particle::WoTsuuji),
    ("との間で", Particle::TonoAidade),
];

impl Particle {
    pub const ALL: [Particle; 10] = [
        Particle::Ha,
        Particle::Ga,
        Particle::No,
        Particle::To,
        Particle::Deha,
        Particle::Niyoruto,
        Particle::Kara,
        Particle::WoTsuuji,
        Particle::TonoAidade,
        Particle::Other,
    ];

    /// Particles that mark a company as a likely antecedent of a later
    /// subject-position anaphor.
    pub const SUBJECT_MARKERS: [Particle; 4] =
        [Particle::Ha, Particle::Ga, Particle::Deha, Particle::Niyoruto];

    pub fn key(self) -> &'static str {
        match self {
            Particle::Ha => "ha",
            Particle::Ga => "ga",
            Particle::No => "no",
            Particle::To => "to",
            Particle::Deha => "deha",
            Particle::Niyoruto => "niyoruto",
            Particle::Kara => "kara",
            Particle::WoTsuuji => "wo_tsuuji",
            Particle::TonoAidade => "tono_aidade",
            Particle::Other => "other",
        }
    }

    /// Script form used when rendering synthetic text. `Other` has no fixed
    /// spelling, so a representative non-listed particle is used.
    pub fn surface(self) -> &'static str {
        match self {
            Particle::Other => "にも",
            p => SCRIPT_TABLE
                .iter()
                .find(|(_, q)| *q == p)
                .map(|(s, _)| *s)
                .expect("every listed particle has a script form"),
        }
    }

    pub fn is_subject_marker(self) -> bool {
        Self::SUBJECT_MARKERS.contains(&self)
    }
}

/// Folds a raw particle string into its canonical key.
///
/// Total: unknown spellings become [`Particle::Other`].
pub fn normalize_particle(raw: &str) -> Particle {
    let raw = raw.trim();
    if let Some((_, p)) = SCRIPT_TABLE.iter().find(|(s, _)| *s == raw) {
        return *p;
    }
    Particle::ALL
        .iter()
        .copied()
        .find(|p| p.key() == raw)
        .unwrap_or(Particle::Other)
}

impl fmt::Display for Particle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl Serialize for Particle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.key())
    }
}

impl<'de> Deserialize<'de> for Particle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Ok(normalize_particle(&raw))
    }
}

/// The two particles a resolvable anaphor may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnaphorParticle {
    Ga,
    Ha,
}

impl AnaphorParticle {
    pub const ALL: [AnaphorParticle; 2] = [AnaphorParticle::Ga, AnaphorParticle::Ha];

    pub fn key(self) -> &'static str {
        Particle::from(self).key()
    }
}

impl From<AnaphorParticle> for Particle {
    fn from(p: AnaphorParticle) -> Self {
        match p {
            AnaphorParticle::Ga => Particle::Ga,
            AnaphorParticle::Ha => Particle::Ha,
        }
    }
}

impl TryFrom<Particle> for AnaphorParticle {
    type Error = Particle;

    fn try_from(p: Particle) -> Result<Self, Self::Error> {
        match p {
            Particle::Ga => Ok(AnaphorParticle::Ga),
            Particle::Ha => Ok(AnaphorParticle::Ha),
            other => Err(other),
        }
    }
}

impl fmt::Display for AnaphorParticle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for AnaphorParticle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AnaphorParticle::try_from(normalize_particle(s))
            .map_err(|_| format!("not an anaphor particle: {s:?} (expected ga or ha)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn script_forms_map_to_keys() {
        assert_eq!(normalize_particle("は"), Particle::Ha);
        assert_eq!(normalize_particle("が"), Particle::Ga);
        assert_eq!(normalize_particle("の"), Particle::No);
        assert_eq!(normalize_particle("と"), Particle::To);
        assert_eq!(normalize_particle("では"), Particle::Deha);
        assert_eq!(normalize_particle("によると"), Particle::Niyoruto);
        assert_eq!(normalize_particle("から"), Particle::Kara);
        assert_eq!(normalize_particle("を通じ"), Particle::WoTsuuji);
        assert_eq!(normalize_particle("との間で"), Particle::TonoAidade);
    }

    #[test]
    fn canonical_keys_are_fixed_points() {
        assert_eq!(normalize_particle("niyoruto"), Particle::Niyoruto);
        for p in Particle::ALL {
            assert_eq!(normalize_particle(p.key()), p);
        }
    }

    #[test]
    fn unknown_particles_fold_to_other() {
        assert_eq!(normalize_particle("nimo"), Particle::Other);
        assert_eq!(normalize_particle(""), Particle::Other);
        assert_eq!(normalize_particle("に"), Particle::Other);
    }

    #[test]
    fn surfaces_round_trip_except_other() {
        for p in Particle::ALL {
            if p != Particle::Other {
                assert_eq!(normalize_particle(p.surface()), p);
            }
        }
        assert_eq!(normalize_particle(Particle::Other.surface()), Particle::Other);
    }

    #[test]
    fn anaphor_particles_parse() {
        assert_eq!("ga".parse::<AnaphorParticle>(), Ok(AnaphorParticle::Ga));
        assert_eq!("は".parse::<AnaphorParticle>(), Ok(AnaphorParticle::Ha));
        assert!("no".parse::<AnaphorParticle>().is_err());
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(raw in "\\PC{0,6}") {
            let once = normalize_particle(&raw);
            prop_assert_eq!(normalize_particle(once.key()), once);
        }
    }
}
