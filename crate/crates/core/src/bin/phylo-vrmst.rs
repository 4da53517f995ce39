fn main() {
    std::process::exit(phylo_vrmst::cli::run(std::env::args_os()));
}
