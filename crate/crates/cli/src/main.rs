use clap::Parser;

fn main() {
    let cli = timeop_cli::Cli::parse();
    std::process::exit(timeop_cli::run(&cli));
}
