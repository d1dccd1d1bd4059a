//! Cluster algebras of geometric type, the Grassmannian initial seed, the hexagonal network
//! N(k,m) and compatibility of the two-parameter bracket family with the cluster structure.

pub mod compat;
pub mod grass;
pub mod hex;
pub mod seed;

pub use compat::{
    check_compatibility, f_monomial, f_on_network, f_via_face_weights, seed_monomials, tau_cluster_face, tau_monomials, tau_star,
    tau_star_table, CompatReport, LabelMonomial,
};
pub use grass::{exchange_matrix, f_from_y, grassmann_initial_seed, plucker_set, quiver_edges, seed_order, GrassmannSeedData};
pub use hex::{build_hex_network, HexNetwork};
pub use seed::{choose_kappa, mutate_cluster, mutate_matrix, rank, tau_coordinates, tau_exponents, ExchangeMatrix, Seed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClusterError {
    #[error("direction {0} out of range")]
    Direction(usize),
    #[error("exchange matrix has the wrong shape")]
    Shape,
    #[error("principal part is not skew-symmetric")]
    NotSkew,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("({0},{1}) is not a stable direction")]
    NotStable(usize, usize),
    #[error("N(k,m) needs k, m >= 2, got ({0},{1})")]
    Size(usize, usize),
    #[error("layout failed")]
    Layout,
    #[error("invalid network: {0}")]
    Invalid(String),
    #[error("no nondegenerate choice of stable exponents")]
    Degenerate,
    #[error("mismatch: {0}")]
    Mismatch(String),
}
