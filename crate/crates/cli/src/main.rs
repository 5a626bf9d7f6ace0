use clap::Parser;

fn main() {
    let cli = accelosc_cli::Cli::parse();
    if let Err(err) = accelosc_cli::run(cli) {
        if let Some(msg) = err.message() {
            eprintln!("error: {msg}");
        }
        std::process::exit(err.exit_code());
    }
}
