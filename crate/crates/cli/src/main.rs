use clap::Parser;

fn main() {
    let cli = sharpblunt_cli::Cli::parse();
    std::process::exit(sharpblunt_cli::run(cli));
}
