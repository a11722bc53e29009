#include "tccc/errors.hpp"
#include "tccc/io.hpp"
#include "tccc/render.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace tccc;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

// Inline JSON text or a path to a JSON file.
Json read_json_arg(const std::string& text)
{
    const auto first = text.find_first_not_of(" \t\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '['))
        return Json::parse(text);
    std::ifstream in(text);
    if (!in)
        throw InputError("cannot open '" + text + "'");
    return Json::parse(in);
}

int emit(const Json& j, int code)
{
    std::cout << j.dump(2) << '\n';
    return code;
}

int fan_validate(const std::string& source)
{
    const FanPtr fan = load_fan(source);
    Json j = fan_to_json(*fan);
    j["smooth"] = fan->smooth();
    j["complete"] = fan->complete();
    j["cones"] = fan->cones().size();
    if (fan->complete())
        j["walls"] = wall_pairs(*fan).size();
    return emit(j, fan->smooth() && fan->complete() ? kPass : kFail);
}

int sheaf_stalk(const std::string& fan_name, const std::string& chi_text, const std::vector<std::string>& points)
{
    const FanPtr fan = load_fan(fan_name);
    const Divisor chi = divisor_from_json(read_json_arg(chi_text), fan);
    Json queries = Json::array();
    for (const auto& p : points) {
        const RationalVector x = parse_point(p);
        if (x.size() != fan->dim())
            throw InputError("point '" + p + "' has the wrong dimension");
        queries.push_back({{"point", to_json(x)}, {"graded_dims", to_json(stalk_P(chi, x))}});
    }
    return emit({{"divisor", divisor_to_json(chi)}, {"queries", std::move(queries)}}, kPass);
}

int sheaf_hom(const std::string& fan_name, const std::string& d1_text, const std::string& d2_text)
{
    const FanPtr fan = load_fan(fan_name);
    const Divisor d1 = divisor_from_json(read_json_arg(d1_text), fan);
    const Divisor d2 = divisor_from_json(read_json_arg(d2_text), fan);
    const TorusHom h = torus_hom(d1, d2);
    Json j{{"d1", divisor_to_json(d1)}, {"d2", divisor_to_json(d2)}, {"hom", to_json(h)}};
    int code = kPass;
    if (d1.is_integral() && d2.is_integral()) {
        const CohomologyReport coh = toric_cohomology(d2 - d1);
        const bool match = coh.shell_zero && coh.total == h.total;
        j["line_bundle_cohomology"] = to_json(coh);
        j["match"] = match;
        if (!match)
            code = kFail;
    }
    return emit(j, code);
}

int verify(const std::string& suite, const SuiteConfig& config)
{
    const VerificationResult r = run_suite(suite, config);
    return emit(to_json(r), r.ok() ? kPass : kFail);
}

int render(const std::string& fan_name, const std::string& chi_text, const std::string& out, double scale)
{
    const FanPtr fan = load_fan(fan_name);
    const Divisor chi = divisor_from_json(read_json_arg(chi_text), fan);
    RenderOptions opts;
    opts.scale = scale;
    const std::string svg = render_svg(chi, opts);
    std::ofstream file(out);
    if (!file)
        throw InputError("cannot write '" + out + "'");
    file << svg;
    return emit({{"divisor", divisor_to_json(chi)}, {"svg", out}, {"bytes", svg.size()}}, kPass);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"tccc: twisted polytope sheaves on toric fans"};
    app.require_subcommand(1);

    auto* fan_cmd = app.add_subcommand("fan", "fan utilities");
    fan_cmd->require_subcommand(1);
    std::string fan_source;
    auto* validate_cmd = fan_cmd->add_subcommand("validate", "check a fan for smoothness and completeness");
    validate_cmd->add_option("fan", fan_source, "built-in name or JSON file")->required();

    auto* sheaf_cmd = app.add_subcommand("sheaf", "twisted polytope sheaves");
    sheaf_cmd->require_subcommand(1);
    std::string fan_name, chi, d1, d2;
    std::vector<std::string> points;
    auto* stalk_cmd = sheaf_cmd->add_subcommand("stalk", "graded stalk dimensions at points");
    stalk_cmd->add_option("--fan", fan_name, "built-in name or JSON file")->required();
    stalk_cmd->add_option("--chi", chi, "divisor as JSON text or file")->required();
    stalk_cmd->add_option("--point", points, "comma separated rationals, repeatable")->required();
    auto* hom_cmd = sheaf_cmd->add_subcommand("hom", "hom between two twisted polytope sheaves on the torus");
    hom_cmd->add_option("--fan", fan_name)->required();
    hom_cmd->add_option("--d1", d1, "source divisor")->required();
    hom_cmd->add_option("--d2", d2, "target divisor")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    SuiteConfig config;
    std::ostringstream names;
    for (const auto& n : suite_names())
        names << ' ' << n;
    verify_cmd->add_option("suite", suite, "one of:" + names.str())->required();
    verify_cmd->add_option("--fan", config.fan);
    verify_cmd->add_option("--range", config.range);
    verify_cmd->add_option("--denom", config.denom);
    verify_cmd->add_option("--seed", config.seed);
    verify_cmd->add_option("--samples", config.samples);

    auto* render_cmd = app.add_subcommand("render", "SVG picture of a two-dimensional twisted polytope");
    std::string out = "out.svg";
    double scale = 60.0;
    render_cmd->add_option("--fan", fan_name)->required();
    render_cmd->add_option("--chi", chi)->required();
    render_cmd->add_option("-o,--output", out);
    render_cmd->add_option("--scale", scale);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInput;
    }

    try {
        if (*validate_cmd)
            return fan_validate(fan_source);
        if (*stalk_cmd)
            return sheaf_stalk(fan_name, chi, points);
        if (*hom_cmd)
            return sheaf_hom(fan_name, d1, d2);
        if (*verify_cmd)
            return verify(suite, config);
        if (*render_cmd)
            return render(fan_name, chi, out, scale);
    } catch (const Json::exception& e) {
        std::cerr << "tccc: bad JSON: " << e.what() << '\n';
        return kInput;
    } catch (const Error& e) {
        std::cerr << "tccc: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
