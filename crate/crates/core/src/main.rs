// SPDX-License-Identifier: Apache-2.0

use std::io;

fn main() {
    let code = {
        let mut out = io::stdout().lock();
        let mut err = io::stderr().lock();
        topk_closeness::cli::run(std::env::args_os(), &mut out, &mut err)
    };
    std::process::exit(code);
}
