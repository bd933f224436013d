pub mod figure;
pub mod poles;
pub mod scatter;
pub mod spectrum;
pub mod verify;
pub mod wavefunction;

use crate::args::Command;
use crate::error::CliError;

pub fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Spectrum(a) => spectrum::run(a),
        Command::Wavefunction(a) => wavefunction::run(a),
        Command::Scatter(a) => scatter::run(a),
        Command::Poles(a) => poles::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Figure(a) => figure::run(a),
    }
}
