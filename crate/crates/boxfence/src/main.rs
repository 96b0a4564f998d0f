use clap::Parser;

fn main() {
    let cli = boxfence::cli::Cli::parse();
    match boxfence::cli::run(cli) {
        Ok(output) => print!("{output}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
