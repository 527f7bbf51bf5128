use clap::Parser;

use merci::cli::{self, Cli};

fn main() {
    let cli = Cli::parse();
    match cli::run(&cli) {
        Ok(bundle) => {
            for path in &bundle.written {
                println!("wrote {}", path.display());
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(cli::exit_code(&err));
        }
    }
}
