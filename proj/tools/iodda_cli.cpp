// Copyright 2026 The IODDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: generate logs, mine decision models, export DRDs.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "iodda.hpp"

namespace fs = std::filesystem;
using namespace iodda;

namespace {

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open for writing", path.string());
    out << text;
    if (!out) throw Error(ErrorCode::IoFailure, "write failed", path.string());
}

std::string read_text(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::MissingFile, path.filename().string() + " not found", path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ensure_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot create directory: " + ec.message(), dir.string());
}

struct GenerateOptions {
    std::string out;
    std::uint64_t seed = 42;
    PublicationParams publication;
    ShippingParams shipping;
};

struct MineOptions {
    std::string log;
    std::string out;
    MiningConfig config;
    bool timing = false;
};

void run_generate(const std::string& process, const GenerateOptions& g)
{
    DocelLog log;
    if (process == "publication") {
        auto p = g.publication;
        p.rng_seed = g.seed;
        log = generate_publication_log(p);
    } else {
        auto p = g.shipping;
        p.rng_seed = g.seed;
        log = generate_shipping_log(p);
    }
    write_docel(log, g.out);
    nlohmann::json run{{"command", "generate " + process},
                       {"seed", g.seed},
                       {"log_fingerprint", log_fingerprint(log)},
                       {"tool_version", kToolVersion},
                       {"events", log.events.size()},
                       {"objects", log.objects.size()}};
    write_text(fs::path(g.out) / "run_manifest.json", canonical_json(run));
    std::cout << "wrote " << log.events.size() << " events, " << log.objects.size() << " objects to " << g.out << "\n";
}

void run_mine(const MineOptions& m)
{
    const auto start = std::chrono::steady_clock::now();
    auto log = parse_docel(m.log);
    auto outputs = mine_to_files(log, m.config);
    ensure_dir(m.out);
    for (const auto& [name, content] : outputs.files) write_text(fs::path(m.out) / name, content);
    if (m.timing)
        outputs.manifest["duration_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text(fs::path(m.out) / "manifest.json", canonical_json(outputs.manifest));
    std::cout << outputs.drds.size() << " DRD(s) written to " << m.out << "\n";
}

void run_export(const std::string& drd_path, const std::string& out)
{
    auto doc = drd_from_json(read_text(drd_path));
    auto dot = drd_to_dot(doc);
    if (out.empty() || out == "-")
        std::cout << dot;
    else
        write_text(out, dot);
}

void run_validate(const std::string& dir)
{
    auto log = parse_docel(dir);
    auto report = validate_log(log);
    for (const auto& w : report.warnings) std::cerr << "warning: " << code_name(w.code) << ": " << w.message << "\n";
    std::cout << log.events.size() << " events, " << log.objects.size() << " objects, " << log.dynamic_records.size()
              << " dynamic records: ok\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Decision model discovery from data-aware object-centric event logs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Generate a synthetic DOCEL log");
    generate->require_subcommand(1);
    auto* pub = generate->add_subcommand("publication", "Book publication process");
    auto* ship = generate->add_subcommand("shipping", "Order shipping process");
    for (auto* sub : {pub, ship}) {
        sub->add_option("--out", gen.out, "Output directory")->required();
        sub->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    }
    pub->add_option("--books", gen.publication.num_books, "Number of books")->capture_default_str();
    pub->add_option("--authors", gen.publication.max_authors, "Number of authors")->capture_default_str();
    pub->add_option("--publishers", gen.publication.max_publishers, "Number of publishers")->capture_default_str();
    pub->add_option("--max-published-books", gen.publication.max_published_books,
                    "Upper bound of an author's published books")
        ->capture_default_str();
    pub->add_option("--threshold", gen.publication.publication_threshold, "Published-books threshold")
        ->capture_default_str();
    pub->add_option("--prob-compliance", gen.publication.prob_compliance, "Probability of a non-compliant manuscript")
        ->capture_default_str();
    ship->add_option("--orders", gen.shipping.num_orders, "Number of orders")->capture_default_str();
    ship->add_option("--customers", gen.shipping.num_customers, "Number of customers")->capture_default_str();
    ship->add_option("--product-value", gen.shipping.product_value, "Value of one product unit")->capture_default_str();
    ship->add_option("--threshold", gen.shipping.order_value_threshold, "Order value threshold")->capture_default_str();
    ship->add_option("--prob-refund", gen.shipping.prob_refund, "Probability of a refund")->capture_default_str();
    ship->add_option("--max-quantity", gen.shipping.max_order_quantity, "Largest order quantity")->capture_default_str();

    MineOptions mine;
    auto* mine_cmd = app.add_subcommand("mine", "Discover decision models");
    mine_cmd->add_option("--log", mine.log, "DOCEL directory")->required();
    mine_cmd->add_option("--out", mine.out, "Output directory")->required();
    auto& c = mine.config;
    mine_cmd->add_option("--min-shift", c.min_shift, "Share of objects an output must shift")->capture_default_str();
    mine_cmd->add_option("--max-shift", c.max_shift, "Highest shift number considered")->capture_default_str();
    mine_cmd->add_option("--min-traceprop", c.min_traceprop, "Share of output objects a candidate must cover")
        ->capture_default_str();
    mine_cmd->add_option("--min-corr", c.min_corr, "Correlation threshold")->capture_default_str();
    mine_cmd->add_option("--min-dev", c.min_dev, "Overlap ratio for merging trace clusters")->capture_default_str();
    mine_cmd->add_option("--min-support", c.min_support, "Cross-validated accuracy threshold")->capture_default_str();
    mine_cmd->add_option("--seed", c.rng_seed, "RNG seed")->capture_default_str();
    mine_cmd->add_option("--trees", c.learner.n_trees, "Trees per forest")->capture_default_str();
    mine_cmd->add_flag("--timing", mine.timing, "Record wall-clock duration in manifest.json");

    std::string drd_path, dot_out;
    auto* export_cmd = app.add_subcommand("export", "Render a DRD JSON file as DOT");
    export_cmd->add_option("--drd", drd_path, "drd_*.json file")->required();
    export_cmd->add_option("--out", dot_out, "Output .dot file (stdout if omitted)");

    std::string validate_dir;
    auto* validate_cmd = app.add_subcommand("validate", "Parse and validate a DOCEL directory");
    validate_cmd->add_option("--log", validate_dir, "DOCEL directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "InvalidConfig: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*generate) run_generate(pub->parsed() ? "publication" : "shipping", gen);
        if (*mine_cmd) run_mine(mine);
        if (*export_cmd) run_export(drd_path, dot_out);
        if (*validate_cmd) run_validate(validate_dir);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "Internal: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
