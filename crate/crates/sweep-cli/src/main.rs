use clap::Parser;
use sweep_cli::cli::Cli;

fn main() {
    let cli = Cli::parse();
    match sweep_cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
