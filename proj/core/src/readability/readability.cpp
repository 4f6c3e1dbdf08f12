#include "dscore/readability/readability.hpp"

#include "dscore/frontend/lexer.hpp"
#include "dscore/frontend/metrics.hpp"
#include "dscore/frontend/parser.hpp"
#include "dscore/scoring/penalties.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

namespace dscore::readability {

using namespace frontend;
using nlohmann::json;

namespace {

// Cap on |r_bw|.
constexpr double kSaturation = 1.0 - 1e-12;

const std::set<std::string, std::less<>> kKeywords = {
    "auto", "break", "case", "char", "const", "continue", "default", "do", "else", "enum", "extern",
    "for", "goto", "if", "int", "long", "register", "return", "short", "signed", "sizeof", "static",
    "struct", "switch", "typedef", "union", "unsigned", "void", "volatile", "while", "_Bool", "inline",
    "restrict",
};

const std::set<std::string, std::less<>> kArithmetic = {
    "+", "-", "*", "/", "%", "++", "--", "<<", ">>", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=",
};

struct AstCounts {
    int casts = 0;
    int gotos = 0;
    int derefs = 0;
    int ternaries = 0;
    int hex_literals = 0;
    int declared_variables = 0;
    int if_statements = 0;
    int max_depth = 0;
};

void count_expr(const Expr& e, AstCounts& n) {
    switch (e.kind) {
        case ExprKind::Cast: ++n.casts; break;
        case ExprKind::Ternary: ++n.ternaries; break;
        case ExprKind::Subscript: ++n.derefs; break;
        case ExprKind::Unary:
            if (e.unary == UnaryOp::Deref) ++n.derefs;
            break;
        case ExprKind::IntLiteral:
            if (e.hex) ++n.hex_literals;
            break;
        default: break;
    }
    for (const Expr& c : e.children) count_expr(c, n);
}

bool nests(StmtKind k) {
    switch (k) {
        case StmtKind::If:
        case StmtKind::While:
        case StmtKind::DoWhile:
        case StmtKind::For:
        case StmtKind::Switch:
            return true;
        default:
            return false;
    }
}

void count_stmt(const Stmt& s, int depth, AstCounts& n) {
    if (nests(s.kind)) ++depth;
    n.max_depth = std::max(n.max_depth, depth);
    if (s.kind == StmtKind::Goto) ++n.gotos;
    if (s.kind == StmtKind::If) ++n.if_statements;
    if (s.kind == StmtKind::Decl) n.declared_variables += static_cast<int>(s.decls.size());
    if (s.expr) count_expr(*s.expr, n);
    if (s.step) count_expr(*s.step, n);
    for (const Declarator& d : s.decls) {
        if (d.init) count_expr(*d.init, n);
    }
    for (const Stmt& c : s.children) count_stmt(c, depth, n);
}

std::map<std::string, double> measure(std::string_view src, const FunctionAst& ast) {
    int total_lines = 0;
    int blank_lines = 0;
    double line_chars = 0;
    std::size_t start = 0;
    while (start <= src.size()) {
        std::size_t end = src.find('\n', start);
        if (end == std::string_view::npos) end = src.size();
        std::string_view line = src.substr(start, end - start);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
        if (end < src.size() || !line.empty()) {
            ++total_lines;
            if (line.find_first_not_of(" \t\r\f\v") == std::string_view::npos) {
                ++blank_lines;
            } else {
                line_chars += static_cast<double>(line.size());
            }
        }
        start = end + 1;
    }
    const int non_blank = total_lines - blank_lines;
    const double per_line = std::max(non_blank, 1);

    int identifiers = 0;
    double identifier_chars = 0;
    int keywords = 0;
    int commas = 0;
    int parens = 0;
    int arithmetic = 0;
    int numbers = 0;
    int tokens = 0;
    for (const Token& t : tokenize(src)) {
        if (t.kind == TokenKind::End) break;
        ++tokens;
        switch (t.kind) {
            case TokenKind::Identifier:
                if (kKeywords.count(t.text)) {
                    ++keywords;
                } else {
                    ++identifiers;
                    identifier_chars += static_cast<double>(t.text.size());
                }
                break;
            case TokenKind::Integer:
            case TokenKind::Char:
                ++numbers;
                break;
            case TokenKind::Punct:
                if (t.text == ",") ++commas;
                else if (t.text == "(" || t.text == ")") ++parens;
                else if (kArithmetic.count(t.text)) ++arithmetic;
                break;
            default:
                break;
        }
    }

    AstCounts n;
    count_stmt(ast.body, 0, n);

    return {
        {"avg_line_length", non_blank ? line_chars / non_blank : 0.0},
        {"identifiers_per_line", identifiers / per_line},
        {"avg_identifier_length", identifiers ? identifier_chars / identifiers : 0.0},
        {"commas_per_line", commas / per_line},
        {"parens_per_line", parens / per_line},
        {"arithmetic_per_line", arithmetic / per_line},
        {"numbers_per_line", numbers / per_line},
        {"keywords_per_line", keywords / per_line},
        {"max_nesting_depth", static_cast<double>(n.max_depth)},
        {"blank_line_ratio", total_lines ? static_cast<double>(blank_lines) / total_lines : 0.0},
        {"non_blank_lines", static_cast<double>(non_blank)},
        {"tokens", static_cast<double>(tokens)},
        {"casts", static_cast<double>(n.casts)},
        {"gotos", static_cast<double>(n.gotos)},
        {"derefs", static_cast<double>(n.derefs)},
        {"ternaries", static_cast<double>(n.ternaries)},
        {"hex_literals", static_cast<double>(n.hex_literals)},
        {"declared_variables", static_cast<double>(n.declared_variables)},
        {"if_statements", static_cast<double>(n.if_statements)},
    };
}

Family family_from_string(const std::string& s) {
    if (s == "bw") return Family::Bw;
    if (s == "r2i-conflicting") return Family::R2iConflicting;
    if (s == "r2i-generic") return Family::R2iGeneric;
    throw ConfigError("unknown feature family '" + s + "'");
}

}  // namespace

const char* to_string(Family f) {
    switch (f) {
        case Family::Bw: return "bw";
        case Family::R2iConflicting: return "r2i-conflicting";
        case Family::R2iGeneric: return "r2i-generic";
    }
    return "?";
}

const std::vector<std::string>& known_features() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, value] : measure("void f(void){}", parse_function("void f(void){}"))) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

std::vector<FeatureSpec> ReadabilityConfig::default_features() {
    return {
        {"avg_line_length", Family::Bw, 0.02, 1.0},
        {"identifiers_per_line", Family::Bw, 0.3, 1.0},
        {"avg_identifier_length", Family::Bw, 0.05, 1.0},
        {"commas_per_line", Family::Bw, 0.5, 1.0},
        {"parens_per_line", Family::Bw, 0.3, 1.0},
        {"arithmetic_per_line", Family::Bw, 0.3, 1.0},
        {"numbers_per_line", Family::Bw, 0.3, 1.0},
        {"keywords_per_line", Family::Bw, 0.2, 1.0},
        {"max_nesting_depth", Family::Bw, 0.2, 1.0},
        {"blank_line_ratio", Family::Bw, -0.5, 1.0},
        {"casts", Family::R2iConflicting, 1.0, 1.0},
        {"gotos", Family::R2iConflicting, 1.0, 1.0},
        {"derefs", Family::R2iConflicting, 1.0, 1.0},
        {"ternaries", Family::R2iConflicting, 1.0, 1.0},
        {"hex_literals", Family::R2iConflicting, 1.0, 1.0},
        {"non_blank_lines", Family::R2iGeneric, 1.0, 1.0},
        {"tokens", Family::R2iGeneric, 1.0, 1.0},
        {"declared_variables", Family::R2iGeneric, 1.0, 1.0},
        {"if_statements", Family::R2iGeneric, 1.0, 1.0},
    };
}

void ReadabilityConfig::validate() const {
    if (!std::isfinite(gamma) || gamma < 0) throw ConfigError("gamma must be finite and >= 0");
    if (!std::isfinite(delta) || delta < 0) throw ConfigError("delta must be finite and >= 0");
    if (!std::isfinite(epsilon_guard) || epsilon_guard <= 0) throw ConfigError("epsilon_guard must be > 0");
    const auto& known = known_features();
    std::set<std::string> seen;
    double r2i_sum = 0;
    for (const FeatureSpec& f : features) {
        if (std::find(known.begin(), known.end(), f.name) == known.end()) {
            throw ConfigError("unknown feature '" + f.name + "'");
        }
        if (!seen.insert(f.name).second) throw ConfigError("duplicate feature '" + f.name + "'");
        if (!std::isfinite(f.weight)) throw ConfigError("feature '" + f.name + "' has a non-finite weight");
        if (f.is_r2i()) {
            if (f.weight < 0) throw ConfigError("r2i feature '" + f.name + "' has a negative weight");
            if (!(f.direction >= 0 && f.direction <= 1)) {
                throw ConfigError("r2i feature '" + f.name + "' has a direction outside [0,1]");
            }
            r2i_sum += f.weight;
        }
    }
    if (!(r2i_sum > 0)) throw ConfigError("r2i weights must have a positive sum");
}

std::map<std::string, double> ReadabilityConfig::r2i_weights() const {
    double sum = 0;
    for (const FeatureSpec& f : features) {
        if (f.is_r2i()) sum += f.weight;
    }
    std::map<std::string, double> out;
    for (const FeatureSpec& f : features) {
        if (f.is_r2i()) out[f.name] = sum > 0 ? f.weight / sum : 0.0;
    }
    return out;
}

ReadabilityConfig ReadabilityConfig::from_json(const json& j) {
    ReadabilityConfig cfg;
    try {
        cfg.gamma = j.value("gamma", cfg.gamma);
        cfg.delta = j.value("delta", cfg.delta);
        cfg.epsilon_guard = j.value("epsilon_guard", cfg.epsilon_guard);
        if (j.contains("features")) {
            cfg.features.clear();
            for (const json& f : j.at("features")) {
                FeatureSpec spec;
                spec.name = f.at("name").get<std::string>();
                spec.family = family_from_string(f.at("family").get<std::string>());
                spec.weight = f.at("weight").get<double>();
                spec.direction = f.value("direction", 1.0);
                cfg.features.push_back(spec);
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("readability config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

json ReadabilityConfig::to_json() const {
    json features_j = json::array();
    for (const FeatureSpec& f : features) {
        json fj = {{"name", f.name}, {"family", readability::to_string(f.family)}, {"weight", f.weight}};
        if (f.is_r2i()) fj["direction"] = f.direction;
        features_j.push_back(fj);
    }
    return {{"gamma", gamma}, {"delta", delta}, {"epsilon_guard", epsilon_guard}, {"features", features_j}};
}

FeatureVector extract_features(std::string_view src, const FunctionAst& ast) {
    return FeatureVector{measure(src, ast)};
}

FeatureVector extract_features(std::string_view src, const FunctionAst& ast, const ReadabilityConfig& cfg) {
    std::map<std::string, double> all = measure(src, ast);
    FeatureVector v;
    for (const FeatureSpec& f : cfg.features) v.values[f.name] = all.at(f.name);
    return v;
}

double r_mul(const FeatureVector& v, const ReadabilityConfig& cfg) {
    double sum = 0;
    for (const FeatureSpec& f : cfg.features) {
        if (!f.is_r2i()) sum += v.at(f.name) * f.weight;
    }
    return sum;
}

double rescaled_sigmoid(double t) { return std::tanh(t / 2); }

double signed_log(double x) {
    if (x == 0) return 0.0;
    const double l = std::log10(1 + std::fabs(x));
    return x < 0 ? -l : l;
}

double r2i_contribution(double x, double direction) {
    const double e = std::exp(-signed_log(x));
    return direction * e + (1 - direction) * (1 - e) - direction;
}

double r_bw(const FeatureVector& cand, const FeatureVector& ref, const ReadabilityConfig& cfg) {
    const double rc = r_mul(cand, cfg);
    const double rr = r_mul(ref, cfg);
    const double denom = std::max(std::fabs(std::min(rc, rr)), cfg.epsilon_guard);
    return std::clamp(rescaled_sigmoid((rr - rc) / denom), -kSaturation, kSaturation);
}

double r_r2i(const FeatureVector& cand, const FeatureVector& ref, const ReadabilityConfig& cfg) {
    const std::map<std::string, double> weights = cfg.r2i_weights();
    double sum = 0;
    for (const FeatureSpec& f : cfg.features) {
        if (!f.is_r2i()) continue;
        sum += weights.at(f.name) * r2i_contribution(cand.at(f.name) - ref.at(f.name), f.direction);
    }
    return std::clamp(sum, -1.0, 1.0);
}

json ReadabilityBreakdown::to_json() const {
    json deltas = json::object();
    for (const auto& [name, value] : candidate.values) deltas[name] = value - reference.values.at(name);
    return {{"r_bw", bw}, {"r_r2i", r2i}, {"readability", score}, {"feature_deltas", deltas}};
}

ReadabilityBreakdown compare(const FeatureVector& cand, const FeatureVector& ref, const ReadabilityConfig& cfg) {
    ReadabilityBreakdown b;
    b.bw = r_bw(cand, ref, cfg);
    b.r2i = r_r2i(cand, ref, cfg);
    b.score = cfg.gamma * b.bw + cfg.delta * b.r2i;
    b.candidate = cand;
    b.reference = ref;
    return b;
}

double readability_score(std::string_view cand_src, std::string_view ref_src, const ReadabilityConfig& cfg) {
    const FeatureVector cand = extract_features(cand_src, parse_function(cand_src), cfg);
    const FeatureVector ref = extract_features(ref_src, parse_function(ref_src), cfg);
    return compare(cand, ref, cfg).score;
}

}  // namespace dscore::readability
