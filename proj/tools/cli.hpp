#pragma once

// Command-line front end. Exit codes: 0 success / feasible / found,
// 1 infeasible / exhausted / failed check, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kweights/kweights.hpp"

namespace kweights::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline Json weight_json(const WeightMatrix& W) {
    Json rows = Json::array();
    for (int r = 0; r < W.order(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < W.order(); ++c) row.push_back(W.at(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string element_string(const AbelianGroup& G, GroupElement g) {
    if (G.factors().size() == 1) return std::to_string(g.index);
    std::string s = "(";
    const auto d = G.decode(g);
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + ")";
}

inline std::string index_set(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

/// "r,c" -> (r, c)
inline std::pair<int, int> parse_anchor(const std::string& text) {
    const auto comma = text.find(',');
    try {
        if (comma == std::string::npos) throw std::invalid_argument("missing comma");
        std::size_t used = 0;
        const int r = std::stoi(text.substr(0, comma), &used);
        if (used != comma) throw std::invalid_argument("row");
        const auto rest = text.substr(comma + 1);
        const int c = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("col");
        return {r, c};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "anchor must be r,c (got '" + text + "')");
    }
}

} // namespace detail

/// Runs one CLI invocation. argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"k-weights and k-plexes of latin squares"};
    app.require_subcommand(1);
    std::function<int()> action;

    std::string outputPath;
    auto emit = [&](const std::string& text) {
        if (outputPath.empty()) {
            out << text;
        } else {
            std::ofstream f(outputPath, std::ios::binary);
            if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + outputPath + "'");
            f << text;
        }
    };

    // ---- gen -----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a square (.ls format)");
    gen->require_subcommand(1);
    gen->add_option("-o,--output", outputPath, "write to FILE instead of standard output");
    int genN = 0;
    std::string genSpec;
    auto* genCyclic = gen->add_subcommand("cyclic", "Cayley table of Z_N");
    genCyclic->fallthrough();
    genCyclic->add_option("N", genN)->required();
    genCyclic->callback([&] {
        action = [&] {
            emit(io::format_square(cayley_table(AbelianGroup::cyclic(genN))));
            return kExitOk;
        };
    });
    auto* genGroup = gen->add_subcommand("group", "Cayley table of cyclic:N or sum:a,b,...");
    genGroup->fallthrough();
    genGroup->add_option("SPEC", genSpec)->required();
    genGroup->callback([&] {
        action = [&] {
            emit(io::format_square(cayley_table(parse_group_spec(genSpec))));
            return kExitOk;
        };
    });
    std::string stepBase;
    int stepQ = 1;
    auto* genStep = gen->add_subcommand("step", "q-step square over a base square");
    genStep->fallthrough();
    genStep->add_option("--base", stepBase, "square FILE or cyclic:M / sum:a,b")->required();
    genStep->add_option("--q", stepQ, "block size")->required();
    genStep->callback([&] {
        action = [&] {
            const bool isGroup = stepBase.rfind("cyclic:", 0) == 0 || stepBase.rfind("sum:", 0) == 0;
            const auto base = isGroup ? cayley_table(parse_group_spec(stepBase)) : io::load_square(stepBase);
            emit(io::format_square(step_type(base, stepQ).first));
            return kExitOk;
        };
    });
    std::uint64_t seed = 0;
    auto* genRandom = gen->add_subcommand("random", "seeded backtracking square (not uniform)");
    genRandom->fallthrough();
    genRandom->add_option("N", genN)->required();
    genRandom->add_option("--seed", seed)->required();
    genRandom->callback([&] {
        action = [&] {
            if (genN < 1 || genN > 256) throw Error(ErrorCode::OrderTooLarge, "random order must be in 1..256");
            emit(io::format_square(random_square(genN, seed)));
            return kExitOk;
        };
    });

    // ---- weight --------------------------------------------------------
    bool json = false;
    std::string squareFile, weightFile, kText, anchorText;
    std::int64_t k = 0;
    auto* weight = app.add_subcommand("weight", "construct, verify and decide k-weights");
    weight->require_subcommand(1);

    auto* construct = weight->add_subcommand("construct", "closed-form 1-, 2- or n-weight");
    construct->add_option("FILE", squareFile)->required();
    construct->add_option("--k", kText, "1, 2 or n")->required();
    construct->add_option("--anchor", anchorText, "anchor cell r,c (default 0,0)");
    construct->add_option("-o,--output", outputPath);
    construct->callback([&] {
        action = [&] {
            const auto L = io::load_square(squareFile);
            std::optional<CellTriple> anchor;
            if (!anchorText.empty()) {
                const auto [r, c] = detail::parse_anchor(anchorText);
                if (r < 0 || r >= L.order() || c < 0 || c >= L.order())
                    throw Error(ErrorCode::InvalidAnchor, "anchor outside the square");
                anchor = L.triple(r, c);
            }
            WeightMatrix W;
            if (kText == "2")
                W = two_weight(L, anchor.value_or(L.triple(0, 0)));
            else if (kText == "1")
                W = one_weight_odd(L, anchor);
            else if (kText == "n" || kText == std::to_string(L.order()))
                W = uniform_weight(L);
            else
                throw Error(ErrorCode::ParseError, "--k must be 1, 2 or n");
            emit(io::format_weight(W));
            return kExitOk;
        };
    });

    auto* verify = weight->add_subcommand("verify", "classify a weight file against a square");
    verify->add_option("FILE", squareFile)->required();
    verify->add_option("WFILE", weightFile)->required();
    verify->add_option("--k", k)->required();
    verify->add_flag("--json", json);
    verify->callback([&] {
        action = [&] {
            const auto L = io::load_square(squareFile);
            const auto W = io::load_weight(weightFile);
            const auto cls = classify(L, W, k);
            const char* kind = cls.is_exact() ? "exact" : cls.is_partial() ? "partial" : "unclassified";
            if (json) {
                Json j{{"kind", kind}, {"k", k}};
                if (cls.is_exact_or_partial()) j["length"] = cls.length;
                if (cls.is_partial()) {
                    j["missingRows"] = cls.missingRows;
                    j["missingCols"] = cls.missingCols;
                    j["missingSymbols"] = cls.missingSymbols;
                }
                out << j.dump() << '\n';
            } else if (cls.is_exact()) {
                out << "exact " << k << "-weight\n";
            } else if (cls.is_partial()) {
                out << "partial " << k << "-weight of length " << cls.length << "; missing rows "
                    << detail::index_set(cls.missingRows) << " columns " << detail::index_set(cls.missingCols)
                    << " symbols " << detail::index_set(cls.missingSymbols) << '\n';
            } else {
                out << "unclassified\n";
            }
            return cls.is_exact_or_partial() ? kExitOk : kExitNegative;
        };
    });

    auto* decide = weight->add_subcommand("decide", "exact integer feasibility of a k-weight");
    decide->add_option("FILE", squareFile)->required();
    decide->add_option("--k", k)->required();
    decide->add_flag("--json", json);
    decide->callback([&] {
        action = [&] {
            const auto L = io::load_square(squareFile);
            const auto d = decide_k_weight(L, k);
            if (json) {
                Json j{{"feasible", d.feasible}, {"k", d.k}};
                if (d.witness) j["witness"] = detail::weight_json(*d.witness);
                if (!d.feasible) {
                    Json cert = Json::array();
                    for (const auto& q : d.certificate) cert.push_back(to_string(q));
                    j["certificate"] = std::move(cert);
                }
                out << j.dump() << '\n';
            } else if (d.feasible) {
                out << "feasible\n" << io::format_weight(*d.witness);
            } else {
                out << "infeasible\ncertificate:";
                for (const auto& q : d.certificate) out << ' ' << to_string(q);
                out << '\n';
            }
            return d.feasible ? kExitOk : kExitNegative;
        };
    });

    auto* spectrum = weight->add_subcommand("spectrum", "all integers or only even k");
    spectrum->add_option("FILE", squareFile)->required();
    spectrum->add_flag("--json", json);
    spectrum->callback([&] {
        action = [&] {
            const auto s = weight_spectrum(io::load_square(squareFile));
            const char* word = s == Spectrum::AllIntegers ? "all" : "even";
            if (json)
                out << Json{{"spectrum", word}}.dump() << '\n';
            else
                out << word << '\n';
            return kExitOk;
        };
    });

    // ---- plex / transversal / parity -----------------------------------
    auto searchJson = [&](SearchOutcome o, std::optional<std::uint64_t> count, const WeightMatrix* witness) {
        Json j{{"outcome", to_string(o)}};
        if (count) j["count"] = *count;
        if (witness) j["witness"] = detail::weight_json(*witness);
        return j;
    };

    std::uint64_t maxNodes = SearchBudget{}.maxNodes;
    int plexK = 1;
    auto* plex = app.add_subcommand("plex", "k-plex search");
    plex->require_subcommand(1);
    auto* plexFind = plex->add_subcommand("find", "backtracking search for a k-plex");
    plexFind->add_option("FILE", squareFile)->required();
    plexFind->add_option("--k", plexK)->required();
    plexFind->add_option("--max-nodes", maxNodes, "backtracking node budget");
    plexFind->add_flag("--json", json);
    plexFind->callback([&] {
        action = [&] {
            const auto L = io::load_square(squareFile);
            const auto res = find_k_plex(L, plexK, SearchBudget{maxNodes});
            const auto* w = res.selection ? &res.selection->chosen : nullptr;
            if (json) {
                out << searchJson(res.outcome, std::nullopt, w).dump() << '\n';
            } else {
                out << to_string(res.outcome) << " (" << res.nodes << " nodes)\n";
                if (w) out << io::format_weight(*w);
            }
            return res.outcome == SearchOutcome::Found ? kExitOk : kExitNegative;
        };
    });

    bool maximalOnly = false;
    auto* transversal = app.add_subcommand("transversal", "transversal counting");
    transversal->require_subcommand(1);
    auto* tCount = transversal->add_subcommand("count", "exact transversal count (order <= 9)");
    tCount->add_option("FILE", squareFile)->required();
    tCount->add_flag("--json", json);
    tCount->callback([&] {
        action = [&] {
            const auto L = io::load_square(squareFile);
            if (L.order() > kMaxTransversalCountOrder) {
                err << "order " << L.order() << " exceeds the counting cap " << kMaxTransversalCountOrder << '\n';
                return kExitUsage;
            }
            const auto count = count_transversals(L);
            const auto outcome = count ? SearchOutcome::Found : SearchOutcome::Exhausted;
            if (json)
                out << searchJson(outcome, count, nullptr).dump() << '\n';
            else
                out << count << '\n';
            return count ? kExitOk : kExitNegative;
        };
    });
    auto* tNear = transversal->add_subcommand("near", "near transversals (order <= 7)");
    tNear->add_option("FILE", squareFile)->required();
    tNear->add_flag("--maximal", maximalOnly, "count only maximal near transversals");
    tNear->add_flag("--json", json);
    tNear->callback([&] {
        action = [&] {
            const auto L = io::load_square(squareFile);
            if (L.order() > kMaxNearCountOrder) {
                err << "order " << L.order() << " exceeds the near-transversal cap " << kMaxNearCountOrder << '\n';
                return kExitUsage;
            }
            const auto count = count_near_transversals(L, maximalOnly);
            std::optional<WeightMatrix> witness;
            if (!maximalOnly) {
                if (auto found = find_near_transversal(L); found.selection)
                    witness = WeightMatrix::indicator(L.order(), found.selection->cells);
            } else {
                for_each_near_transversal(L, [&](const NearTransversal& nt) {
                    if (!witness && nt.maximal(L)) witness = WeightMatrix::indicator(L.order(), nt.cells);
                });
            }
            const auto outcome = count ? SearchOutcome::Found : SearchOutcome::Exhausted;
            if (json) {
                out << searchJson(outcome, count, witness ? &*witness : nullptr).dump() << '\n';
            } else {
                out << count << '\n';
                if (witness) out << io::format_weight(*witness);
            }
            return count ? kExitOk : kExitNegative;
        };
    });

    auto* parity = app.add_subcommand("parity", "transversal / near-transversal counts and residues");
    parity->add_option("FILE", squareFile)->required();
    parity->add_flag("--json", json);
    parity->callback([&] {
        action = [&] {
            const auto L = io::load_square(squareFile);
            if (L.order() > kMaxNearCountOrder) {
                err << "order " << L.order() << " exceeds the cap " << kMaxNearCountOrder << '\n';
                return kExitUsage;
            }
            const auto r = parity_report(L);
            if (json) {
                out << Json{{"transversalCount", r.transversalCount},
                            {"transversalCountMod2", r.transversalCountMod2},
                            {"nearTransversalCount", r.nearTransversalCount},
                            {"nearTransversalCountMod4", r.nearTransversalCountMod4}}
                           .dump()
                    << '\n';
            } else {
                out << "transversals " << r.transversalCount << " (mod 2 = " << r.transversalCountMod2 << ")\n"
                    << "near transversals " << r.nearTransversalCount << " (mod 4 = " << r.nearTransversalCountMod4
                    << ")\n";
            }
            return kExitOk;
        };
    });

    // ---- verify --------------------------------------------------------
    std::string groupSpec;
    auto* check = app.add_subcommand("verify", "group-theoretic checks");
    check->require_subcommand(1);
    auto* lemma = check->add_subcommand("lemma22", "k(s - r - c) against the element sum");
    lemma->add_option("--group", groupSpec)->required();
    lemma->add_option("WFILE", weightFile)->required();
    lemma->add_option("--k", k)->required();
    lemma->add_flag("--json", json);
    lemma->callback([&] {
        action = [&] {
            const auto G = parse_group_spec(groupSpec);
            const auto res = lemma22_check(G, io::load_weight(weightFile), k);
            if (json)
                out << Json{{"delta", detail::element_string(G, res.delta)},
                            {"expected", detail::element_string(G, res.expected)},
                            {"match", res.matches}}
                           .dump()
                    << '\n';
            else
                out << "delta=" << detail::element_string(G, res.delta)
                    << " expected=" << detail::element_string(G, res.expected) << (res.matches ? " match" : " MISMATCH")
                    << '\n';
            if (!res.matches) err << "lemma check failed: implementation bug or counterexample\n";
            return res.matches ? kExitOk : kExitNegative;
        };
    });
    auto* dich = check->add_subcommand("dichotomy", "transversal xor maximal near transversal on a group table");
    dich->add_option("--group", groupSpec)->required();
    dich->add_flag("--json", json);
    dich->callback([&] {
        action = [&] {
            const auto G = parse_group_spec(groupSpec);
            const auto rep = check_dichotomy(G);
            if (json) {
                out << Json{{"transversals", rep.transversals},
                            {"nearTransversals", rep.nearTransversals},
                            {"maximalNearTransversals", rep.maximalNearTransversals},
                            {"oneWeight", rep.oneWeightFeasible},
                            {"uniqueInvolution", rep.uniqueInvolution},
                            {"maximalityConstant", rep.maximalityConstant},
                            {"holds", rep.holds()}}
                           .dump()
                    << '\n';
            } else {
                if (rep.transversals > 0)
                    out << "transversal exists; ";
                else
                    out << "no transversal; ";
                if (rep.maximalNearTransversals > 0)
                    out << "maximal near 1-weight exists\n";
                else
                    out << "no maximal near 1-weight\n";
                out << "transversals " << rep.transversals << ", near transversals " << rep.nearTransversals
                    << " (maximal " << rep.maximalNearTransversals << "), 1-weight "
                    << (rep.oneWeightFeasible ? "feasible" : "infeasible") << ", unique involution "
                    << (rep.uniqueInvolution ? "yes" : "no") << '\n'
                    << (rep.holds() ? "check passed" : "CHECK FAILED") << '\n';
            }
            if (!rep.holds()) err << "dichotomy check failed: implementation bug or counterexample\n";
            return rep.holds() ? kExitOk : kExitNegative;
        };
    });
    auto* ident = check->add_subcommand("identity", "sum_z S_z z - sum_x R_x x - sum_y C_y y");
    ident->add_option("--group", groupSpec)->required();
    ident->add_option("WFILE", weightFile)->required();
    ident->add_flag("--json", json);
    ident->callback([&] {
        action = [&] {
            const auto G = parse_group_spec(groupSpec);
            const auto g = group_sum_identity(G, io::load_weight(weightFile));
            const bool ok = g == G.identity();
            if (json)
                out << Json{{"value", detail::element_string(G, g)}, {"identity", ok}}.dump() << '\n';
            else
                out << detail::element_string(G, g) << (ok ? " (identity)" : " (NOT the identity)") << '\n';
            if (!ok) err << "identity check failed: implementation bug\n";
            return ok ? kExitOk : kExitNegative;
        };
    });

    // ---- survey --------------------------------------------------------
    int surveyOrder = 0;
    auto* survey = app.add_subcommand("survey", "exhaustive small-order surveys");
    survey->require_subcommand(1);
    auto* noOdd = survey->add_subcommand("no-odd-weight", "squares without odd weights vs odd-block Z_2m patterns");
    noOdd->add_option("--order", surveyOrder)->required();
    noOdd->add_flag("--json", json);
    noOdd->callback([&] {
        action = [&] {
            if (surveyOrder < 1 || surveyOrder > SquareCursor::kMaxOrder) {
                err << "survey order must be in 1.." << SquareCursor::kMaxOrder << '\n';
                return kExitUsage;
            }
            const auto rep = survey_no_odd_weight(surveyOrder);
            if (json) {
                Json cands = Json::array();
                for (auto [q, m] : rep.candidates) cands.push_back(Json{{"q", q}, {"base", "cyclic:" + std::to_string(m)}});
                out << Json{{"order", rep.order},
                            {"squares", rep.squares},
                            {"evensOnly", rep.evensOnly},
                            {"candidates", cands},
                            {"evensOnlyAlignedDetected", rep.evensOnlyAlignedDetected},
                            {"evensOnlyIsotopicToStep", rep.evensOnlyIsotopicToStep},
                            {"isotopicToStepTotal", rep.isotopicToStepTotal},
                            {"evensOnlyUnexplained", rep.evensOnlyUnexplained}}
                           .dump()
                    << '\n';
            } else {
                out << "order " << rep.order << ": " << rep.evensOnly << " EvensOnly squares among " << rep.squares
                    << '\n';
                for (auto [q, m] : rep.candidates)
                    out << "candidate pattern: " << q << "-step type over Z_" << m << '\n';
                out << "aligned block-pattern detections: " << rep.evensOnlyAlignedDetected << '\n'
                    << "isotopic to a candidate step-type square: " << rep.evensOnlyIsotopicToStep << " (of "
                    << rep.isotopicToStepTotal << " such squares overall)\n"
                    << "EvensOnly squares matched by neither test: " << rep.evensOnlyUnexplained << '\n';
            }
            return kExitOk;
        };
    });

    std::vector<const char*> cargv;
    cargv.reserve(argv.size());
    for (const auto& a : argv) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }
    if (!action) {
        err << app.help();
        return kExitUsage;
    }
    try {
        return action();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace kweights::cli
