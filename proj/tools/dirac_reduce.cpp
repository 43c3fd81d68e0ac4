#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

// Present when the BLAS backing the eigensolver is OpenBLAS; the weak
// declaration keeps the binary linkable against a plain reference BLAS.
extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace {

int requested_threads() {
    const char* env = std::getenv("DIRAC_REDUCE_THREADS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) return 1;
    return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
    const int threads = requested_threads();
    setenv("OPENBLAS_NUM_THREADS", std::to_string(threads).c_str(), 1);
    if (openblas_set_num_threads) openblas_set_num_threads(threads);

    CLI::App app{"assembled 4x4 Dirac potentials and their two-channel reductions"};
    app.set_version_flag("--version",
                         std::string("dirac-reduce ") + diracred::cli::tool_version);
    app.require_subcommand(1);

    diracred::cli::Options opt;
    double tol_value = 0.0;

    struct SubSpec {
        const char* name;
        const char* blurb;
    };
    const SubSpec subs[] = {
        {"spectrum", "in-gap bound-state energies against the closed forms"},
        {"modes", "normalized catalog states as value tables"},
        {"assemble", "the 4x4 potential of a config as a value table"},
        {"detect", "recover mixing angles and channels from a potential table"},
        {"verify", "run the identity checks of a catalog model"},
        {"perturb", "lift a constant off-diagonal block into the assembled frame"},
    };
    for (const SubSpec& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.blurb);
        sub->add_option("--config", opt.config_path, "JSON config file")
            ->required();
        sub->add_option("--out", opt.out_dir, "output directory (default .)");
        sub->add_option("--tol", tol_value, "primary tolerance override");
        if (std::string(s.name) == "perturb") {
            sub->add_flag("--spin-orbit", opt.spin_orbit,
                          "use the band-picture frame (tau=pi/4, phi=pi/2, eps=+1)");
            sub->add_flag("--bilayer", opt.bilayer,
                          "use the layer-picture frame (tau=pi/4, phi=0, eps=+1)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--tol") > 0) opt.tol = tol_value;
    return diracred::cli::run_command(sub->get_name(), opt);
}
