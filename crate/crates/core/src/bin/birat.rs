use clap::Parser;

fn main() {
    let args = birat::cli::CliArgs::parse();
    std::process::exit(birat::cli::main_with(args));
}
