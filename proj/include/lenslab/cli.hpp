#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "classify_io.hpp"
#include "lens.hpp"
#include "plumbing_json.hpp"
#include "simpleknot.hpp"

namespace lenslab {

namespace detail {

// worker cap, read from LENSLAB_THREADS; every engine here is sequential,
// so the cap is recorded and a bad value only draws a warning
inline long thread_cap(std::ostream& err) {
    const char* env = std::getenv("LENSLAB_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || v < 1) {
        err << "warning: LENSLAB_THREADS='" << env
            << "' is not a positive integer, using 1\n";
        return 1;
    }
    return v;
}

inline std::string format_rep(const CharVector& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(w[i]);
    }
    return s + "]";
}

}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const long threads = detail::thread_cap(err);
    (void)threads;

    CLI::App app{"exact d-invariants for lens spaces and negative-definite plumbings"};
    app.require_subcommand(1);

    long lens_p = 0, lens_q = 0, lens_i = 0;
    auto* dlens = app.add_subcommand("d-lens", "d-invariants of the lens space L(p,q)");
    dlens->add_option("p", lens_p, "order; a negative value reverses orientation")
        ->required();
    dlens->add_option("q", lens_q, "twisting parameter")->required();
    auto* dlens_i = dlens->add_option("i", lens_i, "spin-c index; omit for all");

    std::string plumb_file;
    auto* dplumb = app.add_subcommand(
        "d-plumbing", "d-invariants of a plumbed manifold given as a JSON graph file");
    dplumb->add_option("file", plumb_file, "graph description")->required();

    long sp_p = 0, sp_k = 0, sp_m = 0;
    auto* h1 = app.add_subcommand("h1", "first homology of the surgered manifold");
    h1->add_option("p", sp_p)->required();
    h1->add_option("k", sp_k)->required();
    h1->add_option("m", sp_m)->required();

    long cone_p = 0, cone_k = 0, cone_m = 0, cone_r = 0;
    auto* cone = app.add_subcommand("cone", "sign row of one residue class of the surgery complex");
    cone->add_option("p", cone_p)->required();
    cone->add_option("k", cone_k)->required();
    cone->add_option("m", cone_m)->required();
    cone->add_option("r", cone_r)->required();

    long ob_p = 0, ob_k = 0, ob_m = 0, ob_n = 0;
    auto* obstruct = app.add_subcommand("obstruct", "verdict for one surgery cell");
    obstruct->add_option("p", ob_p)->required();
    obstruct->add_option("k", ob_k)->required();
    obstruct->add_option("m", ob_m)->required();
    obstruct->add_option("n", ob_n, "target lens space order, sign included")->required();

    long cl_p = 0, cl_mb = 12;
    std::string cl_format = "text";
    auto* classify = app.add_subcommand("classify", "sweep all cells for one source order");
    classify->add_option("p", cl_p)->required();
    classify->add_option("--m-bound", cl_mb, "largest |m| to sweep")
        ->check(CLI::PositiveNumber);
    classify->add_option("--format", cl_format, "text, csv, or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dlens->parsed()) {
            if (lens_p == 0) throw invalid_params("p must be nonzero");
            long p = std::labs(lens_p);
            int sign = lens_p > 0 ? 1 : -1;
            if (dlens_i->count()) {
                out << to_string(Rational(sign * d_lens(p, lens_q, lens_i))) << "\n";
            } else {
                for (long i = 0; i < p; ++i)
                    out << i << ": " << to_string(Rational(sign * d_lens(p, lens_q, i)))
                        << "\n";
            }
        } else if (dplumb->parsed()) {
            std::ifstream f(plumb_file);
            if (!f) throw invalid_params("cannot open '" + plumb_file + "'");
            std::string text{std::istreambuf_iterator<char>(f),
                             std::istreambuf_iterator<char>()};
            DTable table = d_plumbed(plumbing_from_json_text(text));
            for (std::size_t i = 0; i < table.entries.size(); ++i)
                out << i << ": d=" << to_string(table.entries[i].d)
                    << " rep=" << detail::format_rep(table.entries[i].cls.canonical)
                    << "\n";
        } else if (h1->parsed()) {
            SurgeryProblem sp(sp_p, sp_k, sp_m);
            out << h1_order(sp) << " spin=" << (is_spin_cobordism(sp) ? "true" : "false")
                << "\n";
        } else if (cone->parsed()) {
            out << cone_diagram(cone_p, cone_k, cone_m, cone_r).signs << "\n";
        } else if (obstruct->parsed()) {
            Row row = classify_row(ob_p, ob_k, ob_m, ob_n);
            out << "verdict: " << to_string(row.verdict) << "\n"
                << "engine: " << row.engine << "\n"
                << "witness: " << row.witness << "\n";
        } else if (classify->parsed()) {
            ClassificationReport rep = classify_all(cl_p, cl_mb);
            if (cl_format == "json")
                out << report_to_json(rep).dump(2) << "\n";
            else if (cl_format == "csv")
                out << report_to_csv(rep);
            else
                out << report_to_text(rep);
        }
    } catch (const invalid_params& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}
