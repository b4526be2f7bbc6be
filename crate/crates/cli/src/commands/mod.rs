mod checks;
mod operator;
mod sweep;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::config::{Command, Params};
use crate::output::Artifacts;
use crate::{Assertion, CliError};

pub use checks::{disk_check, jensen_check, lemma_check};
pub use operator::{det, eig, spectrum};
pub use sweep::lt_sweep;

pub type CommandResult = Result<(Artifacts, Vec<Assertion>), CliError>;

pub fn execute(command: Command, params: &Params) -> CommandResult {
    match command {
        Command::Eig => eig(params),
        Command::Spectrum => spectrum(params),
        Command::Det => det(params),
        Command::LtSweep => lt_sweep(params),
        Command::DiskCheck => disk_check(params),
        Command::LemmaCheck => lemma_check(params),
        Command::JensenCheck => jensen_check(params),
    }
}

/// `[re, im]`.
pub(crate) fn pair(z: Complex64) -> Value {
    serde_json::json!([z.re, z.im])
}

/// Independent generator for one named check.
pub(crate) fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn pool(workers: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Config {
            key: "workers".into(),
            reason: e.to_string(),
        })
}
