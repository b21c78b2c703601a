// SPDX-License-Identifier: Apache-2.0

fn main() {
    let code = lopsided::cli::run(std::env::args_os(), &mut std::io::stdout());
    std::process::exit(code);
}
