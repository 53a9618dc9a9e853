// Command-line front end: transform a TRS for outermost-termination
// analysis, verify the transformation on bounded term enumerations, and
// report corpus statistics.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ocs/algebra.hpp"
#include "ocs/io.hpp"
#include "ocs/labeling.hpp"
#include "ocs/redex_algebra.hpp"
#include "ocs/term.hpp"
#include "ocs/transform.hpp"
#include "ocs/verify.hpp"

namespace {

struct PipelineOptions {
    std::string method = "dynamic-label";
    std::string labeling = "max";
    std::string algebra = "left-linear";
    std::string algebra_file;
    bool minimize = false;
    bool ground_extend = false;
    bool eliminate_collapsing = false;
    std::string output;
};

void add_construction_flags(CLI::App* cmd, PipelineOptions& po, bool method_required) {
    auto* m = cmd->add_option("--method", po.method,
                              "Transformation: static-ext, dynamic-ext, dynamic-label")
                  ->check(CLI::IsMember({"static-ext", "dynamic-ext", "dynamic-label"}));
    if (method_required) m->required();
    cmd->add_option("--labeling", po.labeling, "Labeling: min or max")
        ->check(CLI::IsMember({"min", "max"}));
    cmd->add_option("--algebra", po.algebra,
                    "Algebra construction: left-linear or full")
        ->check(CLI::IsMember({"left-linear", "full"}));
    cmd->add_option("--algebra-file", po.algebra_file,
                    "Read the algebra and redex tables from a sidecar file");
    cmd->add_flag("--minimize", po.minimize, "Minimize the algebra before labeling");
    cmd->add_flag("--ground-extend", po.ground_extend,
                  "Add a fresh constant and unary symbol first");
    cmd->add_flag("--eliminate-collapsing", po.eliminate_collapsing,
                  "Extend collapsing rules even when no value changes");
}

ocs::BuildMode parse_mode(const std::string& s) {
    return s == "full" ? ocs::BuildMode::Full : ocs::BuildMode::LeftLinear;
}

ocs::Trs load_trs(const std::string& path, const PipelineOptions& po) {
    ocs::ProblemFile pf = ocs::parse_problem(ocs::read_file(path));
    ocs::Trs r = pf.trs;
    if (po.ground_extend) {
        ocs::GroundExtension ge = ocs::ground_extend(r);
        std::cerr << "ground extension: added constant " << ge.constant
                  << " and unary symbol " << ge.unary << "\n";
        r = ge.trs;
    }
    return r;
}

ocs::RedexAlgebra make_algebra(const ocs::Trs& r, const PipelineOptions& po) {
    ocs::RedexAlgebra ra =
        po.algebra_file.empty()
            ? ocs::build_redex_algebra(r, parse_mode(po.algebra))
            : ocs::parse_algebra(ocs::read_file(po.algebra_file), r.sig());
    if (po.minimize) ra = ocs::minimize(ra).algebra;
    return ra;
}

ocs::CLabeling make_labeling(const ocs::RedexAlgebra& ra, const PipelineOptions& po) {
    return po.labeling == "min" ? ocs::CLabeling::minimal(ra)
                                : ocs::CLabeling::maximal(ra);
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + output + "'");
    out << text;
}

int run_transform(const std::string& input, const PipelineOptions& po) {
    ocs::Trs r = load_trs(input, po);
    ocs::RedexAlgebra ra = make_algebra(r, po);
    ocs::CLabeling cl = make_labeling(ra, po);
    ocs::TransformOptions opt;
    opt.eliminate_collapsing = po.eliminate_collapsing;

    ocs::CsTrs cs;
    if (po.method == "static-ext") {
        ocs::StaticExtensionResult res = ocs::static_context_extension(r, cl);
        std::cerr << "static extension: " << res.extended << " extended, "
                  << res.labeled << " labeled, " << res.removed << " removed, "
                  << res.cstrs.trs.rules().size() << " kept\n";
        cs = res.cstrs;
    } else if (po.method == "dynamic-ext") {
        ocs::DynamicExtensionResult res = ocs::dynamic_context_extension(r, cl, opt);
        std::cerr << "dynamic extension: " << res.pair_count << " pairs, "
                  << res.cstrs.trs.rules().size() << " rules\n";
        cs = res.cstrs;
    } else {
        ocs::DynamicLabelingResult res = ocs::dynamic_labeling(r, cl, opt);
        std::cerr << "dynamic labeling: " << res.labeled << " labeled, "
                  << res.relabel_sigma << " + " << res.relabel_top
                  << " relabeling, " << res.cstrs.trs.rules().size()
                  << " rules\n";
        cs = res.cstrs;
    }
    emit(ocs::write_cstrs(cs), po.output);
    return 0;
}

int run_show_algebra(const std::string& input, const PipelineOptions& po) {
    ocs::Trs r = load_trs(input, po);
    ocs::RedexAlgebra ra = make_algebra(r, po);
    std::cerr << "algebra: " << ra.alg().size() << " elements\n";
    emit(ocs::format_algebra(ra), po.output);
    return 0;
}

void print_simulation(const ocs::SimulationReport& rep) {
    std::cout << "simulation: " << rep.seeds << " seeds, " << rep.steps
              << " steps, " << rep.failures << " failures\n";
    if (!rep.m_histogram.empty()) {
        std::cout << "relabel-step histogram:";
        for (const auto& [m, n] : rep.m_histogram)
            std::cout << " " << m << ":" << n;
        std::cout << "\n";
    }
    if (rep.failures > 0)
        std::cout << "first failure: " << rep.failure_source->to_string() << " -> "
                  << rep.failure_target->to_string() << "\n";
}

int run_verify(const std::string& input, const PipelineOptions& po,
               std::optional<int> simulate, std::optional<int> recognition,
               std::optional<int> explore, int seed_size) {
    ocs::Trs r = load_trs(input, po);
    ocs::RedexAlgebra ra = make_algebra(r, po);
    bool failed = false;

    if (simulate || explore) {
        ocs::CLabeling cl = make_labeling(ra, po);
        ocs::TransformOptions opt;
        opt.eliminate_collapsing = po.eliminate_collapsing;
        ocs::CsTrs cs;
        if (po.method == "static-ext")
            cs = ocs::static_context_extension(r, cl).cstrs;
        else if (po.method == "dynamic-ext")
            cs = ocs::dynamic_context_extension(r, cl, opt).cstrs;
        else
            cs = ocs::dynamic_labeling(r, cl, opt).cstrs;

        if (simulate) {
            std::vector<ocs::Term> seeds = ocs::enumerate_ground_terms(r.sig(), *simulate);
            ocs::SimulationReport rep =
                po.method == "dynamic-label"
                    ? ocs::check_dynlab_simulation(r, cl, cs, seeds)
                    : ocs::check_cxtext_simulation(r, cl, cs, seeds);
            print_simulation(rep);
            failed |= !rep.ok();
        }
        if (explore) {
            std::vector<ocs::Term> seeds;
            for (const auto& t : ocs::enumerate_ground_terms(r.sig(), seed_size))
                seeds.push_back(cl.label(ocs::Term::fun(ocs::top_symbol, {t}), {}));
            ocs::ExploreResult res = ocs::bounded_explore(cs, seeds, *explore);
            if (res.exceeded) {
                std::cout << "explore: exceeded bound " << *explore << " ("
                          << res.nodes << " terms seen)\n";
                if (!res.witness.empty())
                    std::cout << "witness tail: "
                              << res.witness.back().to_string() << "\n";
                failed = true;
            } else if (res.node_cap_hit) {
                std::cout << "explore: node cap hit, inconclusive\n";
                failed = true;
            } else {
                std::cout << "explore: exhausted, longest derivation "
                          << res.longest << " (" << res.nodes << " terms)\n";
            }
        }
    }

    if (recognition) {
        ocs::RecognitionReport rep =
            ocs::check_recognition(r, ra, parse_mode(po.algebra), *recognition);
        std::cout << "recognition: " << rep.terms << " terms, " << rep.extra
                  << " extra, " << rep.missed << " missed";
        if (rep.minimized_checked)
            std::cout << ", minimized mismatches " << rep.minimized_mismatches;
        std::cout << "\n";
        if (rep.extra > 0)
            std::cout << "claimed but not a redex: " << rep.extra_witness->to_string()
                      << "\n";
        if (rep.missed > 0)
            std::cout << "redex not claimed: " << rep.missed_witness->to_string()
                      << "\n";
        failed |= !rep.ok();
    }

    return failed ? 1 : 0;
}

struct FileStats {
    bool rejected = false;
    std::string diagnostic;
    std::size_t rules = 0;
    std::optional<std::size_t> algebra_size;
    std::optional<std::size_t> minimized_size;
    std::vector<std::optional<int>> cdepths;
    std::optional<std::size_t> static_rules;
    std::optional<std::size_t> dynamic_rules;
    std::optional<std::size_t> labeling_rules;
};

FileStats stats_for(const std::string& path) {
    FileStats fs;
    ocs::Trs r;
    try {
        r = ocs::parse_trs(ocs::read_file(path));
    } catch (const std::exception& e) {
        fs.rejected = true;
        fs.diagnostic = e.what();
        return fs;
    }
    fs.rules = r.rules().size();
    ocs::RedexAlgebra ra;
    try {
        ra = ocs::build_redex_algebra(r, ocs::BuildMode::LeftLinear);
        fs.algebra_size = ra.alg().size();
    } catch (const std::exception& e) {
        fs.diagnostic = e.what();
        return fs;
    }
    try {
        fs.minimized_size = ocs::minimize(ra).algebra.alg().size();
    } catch (const std::exception&) {
    }
    ocs::CModelReport rep = ocs::check_cmodel(ra.alg(), r);
    fs.cdepths = rep.rule_cdepths;
    ocs::CLabeling cl = ocs::CLabeling::maximal(ra);
    try {
        fs.static_rules = ocs::static_context_extension(r, cl).cstrs.trs.rules().size();
    } catch (const std::exception&) {
    }
    try {
        fs.dynamic_rules =
            ocs::dynamic_context_extension(r, cl).cstrs.trs.rules().size();
    } catch (const std::exception&) {
    }
    try {
        fs.labeling_rules = ocs::dynamic_labeling(r, cl).cstrs.trs.rules().size();
    } catch (const std::exception&) {
    }
    return fs;
}

void print_opt(const char* tag, const std::optional<std::size_t>& v, bool last = false) {
    std::cout << tag;
    if (v)
        std::cout << *v;
    else
        std::cout << "n/a";
    std::cout << (last ? "\n" : ", ");
}

int run_stats(const std::vector<std::string>& files) {
    std::map<int, int> depth_histogram;
    int no_depth = 0;
    std::size_t rejected = 0;
    std::size_t algebra_total = 0, algebra_count = 0;
    std::size_t minimized_total = 0, minimized_count = 0;

    for (const auto& path : files) {
        FileStats fs = stats_for(path);
        std::cout << "file: " << path << "\n";
        if (fs.rejected) {
            ++rejected;
            std::cout << "  rejected: " << fs.diagnostic << "\n";
            continue;
        }
        std::cout << "  rules: " << fs.rules << "\n";
        if (!fs.algebra_size) {
            std::cout << "  algebra: unavailable (" << fs.diagnostic << ")\n";
            continue;
        }
        algebra_total += *fs.algebra_size;
        ++algebra_count;
        std::cout << "  algebra: " << *fs.algebra_size << " elements";
        if (fs.minimized_size) {
            minimized_total += *fs.minimized_size;
            ++minimized_count;
            std::cout << ", minimized " << *fs.minimized_size;
        }
        std::cout << "\n  c-depths:";
        for (const auto& d : fs.cdepths) {
            if (d) {
                std::cout << " " << *d;
                ++depth_histogram[*d];
            } else {
                std::cout << " -";
                ++no_depth;
            }
        }
        std::cout << "\n  ";
        print_opt("static-ext: ", fs.static_rules);
        print_opt("dynamic-ext: ", fs.dynamic_rules);
        print_opt("dynamic-label: ", fs.labeling_rules, true);
    }

    std::cout << "corpus: " << files.size() << " files, " << rejected
              << " rejected\n";
    std::cout << "c-depth histogram:";
    for (const auto& [d, n] : depth_histogram) std::cout << " " << d << ":" << n;
    if (no_depth) std::cout << " none:" << no_depth;
    std::cout << "\n";
    if (algebra_count)
        std::cout << "algebra size: " << algebra_total << "/" << algebra_count
                  << " before minimization, " << minimized_total << "/"
                  << minimized_count << " after\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outermost-termination transformations for term rewriting systems"};
    app.require_subcommand(1);

    PipelineOptions po;
    std::string input;

    auto* transform =
        app.add_subcommand("transform", "Write the transformed context-sensitive TRS");
    add_construction_flags(transform, po, true);
    transform->add_option("-o,--output", po.output, "Output file (default stdout)");
    transform->add_option("input", input, "TRS file")->required();

    auto* verify = app.add_subcommand(
        "verify", "Check the transformation against bounded enumerations");
    add_construction_flags(verify, po, false);
    std::optional<int> simulate, recognition, explore;
    int seed_size = 5;
    verify->add_option("--simulate", simulate,
                       "Check step simulation on ground seeds up to this size");
    verify->add_option("--recognition", recognition,
                       "Compare algebra redex recognition on ground terms up to this size");
    verify->add_option("--explore", explore,
                       "Explore labeled derivations up to this length");
    verify->add_option("--seed-size", seed_size,
                       "Ground seed size for --explore (default 5)");
    verify->add_option("input", input, "TRS file")->required();

    auto* stats = app.add_subcommand("stats", "Per-file and corpus statistics");
    std::vector<std::string> files;
    stats->add_option("files", files, "TRS files");

    auto* show =
        app.add_subcommand("show-algebra", "Print the redex algebra in sidecar format");
    add_construction_flags(show, po, false);
    show->add_option("-o,--output", po.output, "Output file (default stdout)");
    show->add_option("input", input, "TRS file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (transform->parsed()) return run_transform(input, po);
        if (show->parsed()) return run_show_algebra(input, po);
        if (stats->parsed()) return run_stats(files);
        if (!simulate && !recognition && !explore) {
            std::cerr << "verify: pass at least one of --simulate, --recognition, "
                         "--explore\n";
            return 2;
        }
        return run_verify(input, po, simulate, recognition, explore, seed_size);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
