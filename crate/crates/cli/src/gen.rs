use anyhow::{bail, Result};
use clap::Subcommand;
use exprcore::{RationalFunction as RF, Var, VarTable};
use measurement::Elementary;
use network::{gen as g, Network};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Subcommand)]
pub enum Which {
    /// The two-source, two-sink example network with free weights w1..w11
    Fig1 {
        /// use the specialized weights in x1..x4 instead
        #[arg(long)]
        x: bool,
    },
    /// The G_2(4) cell network with weights w1..w8
    G24,
    /// One edge b1 -> b2 with weight w
    Chord,
    /// diag(d1..dn)
    Diag { n: usize },
    /// 1 + l e_{i,i-1} on n strands
    EMinus { n: usize, i: usize },
    /// 1 + u e_{i-1,i} on n strands
    EPlus { n: usize, i: usize },
    /// Lower factor with parameters c, d in rows i-1, i
    RhoMinus { n: usize, i: usize },
    /// Upper factor with parameters c, d in rows i-1, i
    RhoPlus { n: usize, i: usize },
    /// Six-factor network of a generic 3x3 matrix of determinant 1
    Sl3,
    /// The hexagonal network N(k,m) with face variables y{i}_{j}
    Hex { k: usize, m: usize },
    /// Random perfect network with weights w1..
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// at most this many internal vertices
        #[arg(long, default_value_t = 5)]
        internal: usize,
        /// at most this many boundary vertices
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
}

fn v(name: &str) -> RF {
    RF::var(Var::new(name))
}

fn table(names: &[&str]) -> VarTable {
    VarTable::from_names(names.iter())
}

pub fn generate(which: Which) -> Result<Network> {
    Ok(match which {
        Which::Fig1 { x: true } => g::fig1(),
        Which::Fig1 { x: false } => g::fig1_symbolic(),
        Which::G24 => g::g24(),
        Which::Chord => g::chord(v("w"), table(&["w"])),
        Which::Diag { n } => {
            if n == 0 {
                bail!("diag needs n >= 1");
            }
            let names: Vec<String> = (1..=n).map(|i| format!("d{i}")).collect();
            g::diag(names.iter().map(|s| v(s)).collect(), VarTable::from_names(names.iter()))
        }
        Which::EMinus { n, i } => g::e_minus(n, i, v("l"), table(&["l"]))?,
        Which::EPlus { n, i } => g::e_plus(n, i, v("u"), table(&["u"]))?,
        Which::RhoMinus { n, i } => g::rho_minus(n, i, v("c"), v("d"), table(&["c", "d"]))?,
        Which::RhoPlus { n, i } => g::rho_plus(n, i, v("c"), v("d"), table(&["c", "d"]))?,
        Which::Sl3 => {
            let (factors, vars) = measurement::generic_sl3();
            let nets = factors.iter().map(|f: &Elementary| f.network(3, vars.clone())).collect::<Result<Vec<_>, _>>()?;
            measurement::chain(&nets)?
        }
        Which::Hex { k, m } => cluster::build_hex_network(k, m)?.net,
        Which::Random { seed, internal, n } => {
            if n < 3 || internal == 0 {
                bail!("random networks need n >= 3 and at least one internal vertex");
            }
            g::random_network(&mut ChaCha8Rng::seed_from_u64(seed), internal, n)
        }
    })
}
