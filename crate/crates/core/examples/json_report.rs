//! The report the command-line tool writes, built in-process.

use monodromy::cli::{envelope, run_input, Command, RunConfig};
use serde_json::json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = RunConfig::new(Command::Kodaira);
    let input = json!({ "label": "y^2 = x^3 + x + t", "p": "1", "q": "t" });
    let outcome = run_input(config.command, &input, &config.options())?;
    let env = envelope(&config, &outcome);
    println!("{}", serde_json::to_string_pretty(&env["summary"])?);
    println!("version {}, all checks hold: {}", env["version"], env["ok"]);
    Ok(())
}
