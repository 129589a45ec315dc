//! `create_user --username NAME [--fullname NAME] --id N`

use std::process::ExitCode;

use freeap::optparse::{run_parser, usage, user_parser};

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args == ["--help"] {
        print!("{}", usage("create_user", user_parser()));
        return ExitCode::SUCCESS;
    }
    match run_parser(user_parser(), &args) {
        Some(user) => {
            println!("{user}");
            ExitCode::SUCCESS
        }
        None => {
            eprintln!("error: invalid arguments");
            ExitCode::FAILURE
        }
    }
}
