//! Named construction recipes: a family id plus its parameters, buildable
//! into a verified [`Construction`] and storable in the catalog.

use dsrg::constructions::{
    balanced_product_of, cyclic_q_orbit_family, cyclic_semidirect_family, cyclic_semidirect_with_identity,
    dihedral_family, expand_t_lambda1, expand_t_mu, nested_semidirect_family, pipeline_base, Construction, Family,
    PipelineBase,
};
use dsrg::groups::find_q_orbit_power;
use dsrg::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize, clap::Args)]
pub struct Recipe {
    /// Family id: f39, f310, f311-base, f311, f314, dihedral, product,
    /// expand-tmu or expand-tl1
    pub family: String,
    /// Prime order of the cyclic normal subgroup (f39, f310, f314)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    /// Order of the acting cyclic group (f39, f310, f314), the dihedral
    /// rotation order, or the pipeline base size (product)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Order of the cyclic group C_m acted on (f311-base, f311)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    /// Multiplier: primitive root (f314) or power map a -> a^s (f311;
    /// searched when omitted)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
    /// Orbit length (f311-base, f311)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    /// Exponent set, comma separated (f39, f310)
    #[arg(long = "H", value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h: Vec<u64>,
    /// Product pipeline base: odd, odd-complement or dihedral-complement
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    /// Base family for expand-tmu / expand-tl1 (takes the other flags)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
    /// Expansion factor (expand-tmu, expand-tl1)
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<usize>,
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T> {
    value.ok_or_else(|| Error::BadParams(format!("{family} needs --{flag}")))
}

fn pipeline_kind(name: &str) -> Result<PipelineBase> {
    match name {
        "odd" => Ok(PipelineBase::Odd),
        "odd-complement" => Ok(PipelineBase::OddComplement),
        "dihedral-complement" => Ok(PipelineBase::DihedralComplement),
        other => Err(Error::BadParams(format!(
            "unknown product base {other:?} (expected odd, odd-complement or dihedral-complement)"
        ))),
    }
}

impl Recipe {
    pub fn build(&self) -> Result<Construction> {
        let id = self.family.as_str();
        let family = Family::from_id(id).ok_or_else(|| Error::BadParams(format!("unknown family {id:?}")))?;
        match family {
            Family::CyclicSemidirect => cyclic_semidirect_family(need(self.p, "p", id)?, need(self.n, "n", id)?, &self.h),
            Family::CyclicSemidirectWithIdentity => {
                cyclic_semidirect_with_identity(need(self.p, "p", id)?, need(self.n, "n", id)?, &self.h)
            }
            Family::QOrbitBase | Family::QOrbit => {
                let (m, q) = (need(self.m, "m", id)?, need(self.q, "q", id)?);
                let s = match self.s {
                    Some(s) => s,
                    None => find_q_orbit_power(m, q)
                        .ok_or_else(|| Error::BadParams(format!("no power map of C_{m} has all orbits of size {q}")))?,
                };
                cyclic_q_orbit_family(m, s, q, family == Family::QOrbit)
            }
            Family::NestedSemidirect => {
                nested_semidirect_family(need(self.p, "p", id)?, need(self.n, "n", id)?, need(self.s, "s", id)?)
            }
            Family::Dihedral => dihedral_family(need(self.n, "n", id)?),
            Family::BalancedProduct => {
                let kind = pipeline_kind(self.base.as_deref().ok_or_else(|| Error::BadParams("product needs --base".into()))?)?;
                balanced_product_of(&pipeline_base(kind, need(self.n, "n", id)?)?)
            }
            Family::ExpandTMu | Family::ExpandTLambda1 => {
                let of = self.of.clone().ok_or_else(|| Error::BadParams(format!("{id} needs --of")))?;
                if of.starts_with("expand") {
                    return Err(Error::BadParams("--of must name a base family".into()));
                }
                let base = Recipe { family: of, of: None, times: None, ..self.clone() }.build()?;
                let times = need(self.times, "times", id)?;
                if family == Family::ExpandTMu {
                    expand_t_mu(&base, times)
                } else {
                    expand_t_lambda1(&base, times)
                }
            }
        }
    }

    /// Flag form, e.g. `f39 --p 3 --n 2 --H 1`.
    pub fn command_line(&self) -> String {
        let mut parts = vec![self.family.clone()];
        let mut flag = |name: &str, value: Option<String>| {
            if let Some(v) = value {
                parts.push(format!("--{name} {v}"));
            }
        };
        flag("of", self.of.clone());
        flag("base", self.base.clone());
        flag("p", self.p.map(|x| x.to_string()));
        flag("n", self.n.map(|x| x.to_string()));
        flag("m", self.m.map(|x| x.to_string()));
        flag("s", self.s.map(|x| x.to_string()));
        flag("q", self.q.map(|x| x.to_string()));
        if !self.h.is_empty() {
            let h: Vec<String> = self.h.iter().map(u64::to_string).collect();
            flag("H", Some(h.join(",")));
        }
        flag("times", self.times.map(|x| x.to_string()));
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dsrg::ParamTuple;

    fn recipe(family: &str) -> Recipe {
        Recipe { family: family.into(), ..Recipe::default() }
    }

    #[test]
    fn builds_each_family() {
        let cases = [
            (Recipe { p: Some(3), n: Some(2), h: vec![1], ..recipe("f39") }, ParamTuple::raw(6, 2, 1, 0, 1)),
            (Recipe { p: Some(3), n: Some(2), h: vec![1], ..recipe("f310") }, ParamTuple::raw(6, 3, 2, 1, 2)),
            (Recipe { m: Some(7), q: Some(3), ..recipe("f311-base") }, ParamTuple::raw(21, 6, 2, 1, 2)),
            (Recipe { m: Some(7), q: Some(3), s: Some(2), ..recipe("f311") }, ParamTuple::raw(21, 8, 3, 3, 4)),
            (Recipe { p: Some(3), n: Some(2), s: Some(2), ..recipe("f314") }, ParamTuple::raw(18, 12, 10, 7, 10)),
            (Recipe { n: Some(4), ..recipe("dihedral") }, ParamTuple::raw(8, 3, 1, 1, 2)),
            (Recipe { n: Some(3), base: Some("odd".into()), ..recipe("product") }, ParamTuple::raw(36, 16, 8, 6, 8)),
            (
                Recipe { of: Some("f39".into()), p: Some(3), n: Some(2), h: vec![1], times: Some(2), ..recipe("expand-tmu") },
                ParamTuple::raw(12, 4, 2, 0, 2),
            ),
            (
                Recipe { of: Some("dihedral".into()), n: Some(4), times: Some(2), ..recipe("expand-tl1") },
                ParamTuple::raw(16, 7, 2, 4, 5),
            ),
        ];
        for (r, want) in cases {
            assert_eq!(r.build().unwrap().expected, want, "{}", r.command_line());
        }
    }

    #[test]
    fn missing_and_unknown_parameters() {
        assert!(matches!(recipe("f39").build(), Err(Error::BadParams(_))));
        assert!(matches!(recipe("nope").build(), Err(Error::BadParams(_))));
        assert!(matches!(Recipe { n: Some(3), base: Some("x".into()), ..recipe("product") }.build(), Err(Error::BadParams(_))));
        assert!(matches!(Recipe { m: Some(7), q: Some(4), ..recipe("f311") }.build(), Err(Error::BadParams(_))));
    }

    #[test]
    fn command_line_and_json_forms() {
        let r = Recipe { p: Some(3), n: Some(2), h: vec![1, 2], ..recipe("f39") };
        assert_eq!(r.command_line(), "f39 --p 3 --n 2 --H 1,2");
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"family":"f39","p":3,"n":2,"h":[1,2]}"#);
        assert_eq!(serde_json::from_str::<Recipe>(&json).unwrap(), r);
    }
}
