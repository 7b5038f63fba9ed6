use std::env;
use std::process;

fn main() {
    process::exit(evonim::cli::run(env::args_os()));
}
