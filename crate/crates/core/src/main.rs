fn main() {
    std::process::exit(isoreduce::cli::main_with_args(std::env::args_os()));
}
