use anyhow::Result;
use subcube_core::dimacs::write_cnf;
use subcube_core::families::{
    compose, pebbling, pebhint, php, php_delta, pyramid, random_regular_bipartite, subset_cardinality, tseitin,
    Gadget,
};
use subcube_core::ClauseMultiset;

use super::{charge_string, graph};
use crate::args::{Family, GadgetArg, Global};
use crate::config::ExperimentConfig;
use crate::io;

impl From<GadgetArg> for Gadget {
    fn from(g: GadgetArg) -> Self {
        match g {
            GadgetArg::Or => Gadget::Or2,
            GadgetArg::Xor => Gadget::Xor2,
        }
    }
}

pub fn run(g: &Global, family: &Family) -> Result<u8> {
    let (f, cfg) = build(g, family)?;
    io::emit(g.out.as_ref(), &write_cnf(&f, &cfg.header()))?;
    Ok(0)
}

/// The formula for `family` and the config that reproduces it.
pub fn build(g: &Global, family: &Family) -> Result<(ClauseMultiset, ExperimentConfig)> {
    let cfg = ExperimentConfig::new("generate", g);
    Ok(match family {
        Family::Php { m } => (php(*m), cfg.family("php").param("m", m)),
        Family::PhpDelta { m } => (php_delta(*m), cfg.family("php-delta").param("m", m)),
        Family::Tseitin(args) => {
            let gr = graph(args, g.seed)?;
            let cfg = cfg
                .family("tseitin")
                .param("graph", &args.graph)
                .param("charge", charge_string(&gr));
            (tseitin(&gr), cfg)
        }
        Family::Pebbling { height } => (pebbling(&pyramid(*height))?, cfg.family("pebbling").param("h", height)),
        Family::Pebhint { height, gadget } => {
            let base = pebhint(&pyramid(*height))?;
            let cfg = cfg.family("pebhint").param("h", height);
            match gadget {
                Some(gd) => (compose(&base, (*gd).into()), cfg.param("gadget", Gadget::from(*gd))),
                None => (base, cfg),
            }
        }
        Family::PebhintOr { height } => (
            compose(&pebhint(&pyramid(*height))?, Gadget::Or2),
            cfg.family("pebhint-or").param("h", height),
        ),
        Family::Subset { n } => {
            let bg = random_regular_bipartite(*n, g.seed)?;
            (subset_cardinality(&bg)?, cfg.family("subset").param("n", n))
        }
        Family::Compose { input, gadget } => {
            let base = io::read_cnf(input)?;
            let cfg = cfg
                .family("compose")
                .param("input", input.display())
                .param("gadget", Gadget::from(*gadget));
            (compose(&base, (*gadget).into()), cfg)
        }
    })
}
