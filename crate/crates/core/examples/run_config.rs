//! Drive a suite from a TOML config and write its reports.
//!
//! ```text
//! cargo run --example run_config -- path/to/run.toml out/
//! ```

use finsler_hardy::cli::{run, RunConfig};

const DEFAULT: &str = r#"
theorem = "hardy-sweep"

[model]
kind = "randers"
n = 3
t = 0.5
measure = "ht"

[params]
beta = 0.0
r = 0.5
R = 1.0
orientation = "minus"
"#;

fn main() -> finsler_hardy::error::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = match args.next() {
        Some(path) => RunConfig::load(std::path::Path::new(&path))?,
        None => RunConfig::from_toml(DEFAULT)?,
    };
    let theorem = config.theorem.clone().unwrap_or_else(|| "hardy-sweep".into());
    let out = run(&theorem, &config)?;
    match args.next() {
        Some(dir) => {
            out.write(std::path::Path::new(&dir))?;
            println!("wrote {dir}/report.json");
        }
        None => print!("{}", out.to_json()),
    }
    std::process::exit(if out.passed { 0 } else { 1 });
}
