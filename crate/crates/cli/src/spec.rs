//! The generation grammar `FAMILYn g=G [strict|schottky] [seed=S]` and
//! dimension-table grids `SL2 g=2, GL2 g=3, ...`.

use std::fmt;
use std::str::FromStr;

use surfrep::topology::random_schottky_psl;
use surfrep::{random_good_schottky, Error, Family, GroupDescriptor, Result, SurfaceRep};

/// A request for a random unitary Schottky representation. Strict unless
/// `schottky` is given; the seed defaults to 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub desc: GroupDescriptor,
    pub genus: usize,
    pub strict: bool,
    pub seed: u64,
}

impl GenSpec {
    /// Good representations need genus at least 2. Genus-1 requests are
    /// only served for PSL, without the goodness retry.
    pub fn generate(&self) -> Result<SurfaceRep> {
        if self.genus == 1 && self.desc.family() == Family::Psl {
            return random_schottky_psl(self.desc.n(), 1, self.seed);
        }
        random_good_schottky(self.desc, self.genus, self.strict, self.seed)
    }
}

fn key_value<'a>(token: &'a str, key: &str) -> Option<&'a str> {
    token.strip_prefix(key).and_then(|r| r.strip_prefix('='))
}

fn number<N: FromStr>(value: &str, what: &str) -> Result<N> {
    value.parse().map_err(|_| Error::Parse(format!("bad {what} `{value}`")))
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let desc: GroupDescriptor = tokens.next().ok_or_else(|| Error::Parse("empty generation spec".into()))?.parse()?;
        let (mut genus, mut strict, mut seed) = (None, true, 0);
        for t in tokens {
            if let Some(v) = key_value(t, "g") {
                genus = Some(number(v, "genus")?);
            } else if let Some(v) = key_value(t, "seed") {
                seed = number(v, "seed")?;
            } else if t == "strict" {
                strict = true;
            } else if t == "schottky" {
                strict = false;
            } else {
                return Err(Error::Parse(format!("unexpected token `{t}` in generation spec")));
            }
        }
        let genus = genus.ok_or_else(|| Error::Parse(format!("missing g=G in `{s}`")))?;
        Ok(GenSpec { desc, genus, strict, seed })
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mode = if self.strict { "strict" } else { "schottky" };
        write!(f, "{} g={} {mode} seed={}", self.desc, self.genus, self.seed)
    }
}

/// One cell of a dimension table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellSpec {
    pub desc: GroupDescriptor,
    pub genus: usize,
}

impl FromStr for CellSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        match tokens.as_slice() {
            [d, g] => {
                let genus = key_value(g, "g").ok_or_else(|| Error::Parse(format!("expected g=G in `{s}`")))?;
                Ok(CellSpec { desc: d.parse()?, genus: number(genus, "genus")? })
            }
            _ => Err(Error::Parse(format!("expected `FAMILYn g=G`, got `{s}`"))),
        }
    }
}

/// Comma-separated cells; blank entries are skipped, so `""` is the empty grid.
pub fn parse_grid(s: &str) -> Result<Vec<CellSpec>> {
    s.split(',').map(str::trim).filter(|c| !c.is_empty()).map(str::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_generation_specs() {
        let s: GenSpec = "SL2 g=2 strict seed=7".parse().unwrap();
        assert_eq!((s.desc.to_string(), s.genus, s.strict, s.seed), ("SL2".into(), 2, true, 7));
        let s: GenSpec = "GL3 schottky g=4".parse().unwrap();
        assert_eq!((s.genus, s.strict, s.seed), (4, false, 0));
        assert_eq!(s.to_string().parse::<GenSpec>().unwrap(), s);
        for bad in ["", "SL2", "SL2 g=x", "SL2 g=2 fast", "SO2 g=2", "SL2 g=2 seed=-1"] {
            assert!(bad.parse::<GenSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn parses_grids() {
        let g = parse_grid("SL2 g=2, SL3 g=2 ,GL2 g=3").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!((g[2].desc.to_string(), g[2].genus), ("GL2".into(), 3));
        assert!(parse_grid("").unwrap().is_empty());
        assert!(parse_grid(" , ").unwrap().is_empty());
        assert!(parse_grid("SL2").is_err());
    }

    #[test]
    fn genus_one_only_for_psl() {
        let psl: GenSpec = "PSL2 g=1 schottky seed=3".parse().unwrap();
        assert_eq!(psl.generate().unwrap().genus(), 1);
        let sl: GenSpec = "SL2 g=1".parse().unwrap();
        assert!(matches!(sl.generate(), Err(Error::InvalidGenus(1))));
    }
}
