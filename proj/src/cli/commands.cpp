/*
 * Copyright 2026 The embias Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "embias/analysis/adjectives.hpp"
#include "embias/analysis/pipeline.hpp"
#include "embias/analysis/stat_table.hpp"
#include "embias/bias/word_sets.hpp"
#include "embias/cli/cli.hpp"
#include "embias/corpus/corpus.hpp"
#include "embias/embed/model.hpp"
#include "embias/embed/source.hpp"
#include "embias/embed/train.hpp"
#include "embias/error.hpp"
#include "embias/log.hpp"
#include "embias/rng.hpp"
#include "embias/util.hpp"

namespace embias::cli {

namespace {

namespace fs = std::filesystem;

void require_dir(const fs::path& p, const std::string& what) {
    if (!fs::is_directory(p)) throw ConfigError(what + " directory not found: " + p.string());
}

void require_file(const fs::path& p, const std::string& what) {
    if (!fs::is_regular_file(p)) throw ConfigError(what + " file not found: " + p.string());
}

void ensure_dir(const fs::path& p) {
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw DataError("cannot create directory " + p.string() + ": " + ec.message());
}

/// Output file names derive from user-supplied set/stat/region names; map
/// anything the filesystem might dislike onto '-'.
std::string safe_name(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        unsigned char u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && c != '.' && c != '_' && c != '-') c = '-';
    }
    return out;
}

std::string model_filename(const std::string& region, embed::Algorithm alg) {
    return region + "." + std::string(embed::algorithm_name(alg)) + ".bin";
}

/// All models of one algorithm, keyed by the region encoded in the file
/// name (<region>.<algorithm>.bin). ConfigError when none exist.
analysis::CultureModels load_models(const fs::path& dir, embed::Algorithm alg) {
    require_dir(dir, "model");
    const std::string suffix = "." + std::string(embed::algorithm_name(alg)) + ".bin";
    analysis::CultureModels models;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (!name.ends_with(suffix) || name.size() == suffix.size()) continue;
        std::string region = name.substr(0, name.size() - suffix.size());
        models.emplace(std::move(region), embed::load_model(entry.path()));
    }
    if (models.empty())
        throw ConfigError("no '" + std::string(embed::algorithm_name(alg)) + "' models found in " +
                          dir.string() + "; run the train command first");
    return models;
}

std::vector<analysis::StatTable> load_stats(const RunConfig& cfg) {
    require_dir(cfg.stats_dir, "statistics");
    return analysis::load_stats_dir(cfg.stats_dir);
}

struct AnalysisInputs {
    analysis::CultureModels models;
    bias::WordSetCatalog catalog;
    analysis::CultureAxes axes;
};

AnalysisInputs load_analysis_inputs(const RunConfig& cfg) {
    AnalysisInputs in;
    in.models = load_models(cfg.model_dir, cfg.train.algorithm);
    require_dir(cfg.wordset_dir, "word-set");
    in.catalog = bias::load_catalog(cfg.wordset_dir);
    in.axes = analysis::make_axes(in.models, in.catalog.female, in.catalog.male,
                                  cfg.unit_normalize);
    return in;
}

std::string join_words(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

std::string join_selections(const std::vector<std::vector<std::string>>& selections) {
    std::string out;
    for (const auto& sel : selections) {
        if (!out.empty()) out += '|';
        out += join_words(sel);
    }
    return out;
}

}  // namespace

void cmd_preprocess(const RunConfig& cfg) {
    if (cfg.inputs.empty())
        throw ConfigError(
            "preprocess needs at least one raw record file; set 'inputs' or pass --inputs");
    for (const auto& p : cfg.inputs) require_file(p, "input");
    if (cfg.cap == 0) throw ConfigError("cap must be >= 1");
    ensure_dir(cfg.corpus_dir);

    corpus::CorpusManifest manifest;
    manifest.cap = cfg.cap;
    manifest.seed = cfg.seed;
    std::vector<corpus::CleanSentence> accepted;
    for (const auto& path : cfg.inputs) {
        corpus::ParseStats stats =
            corpus::parse_records_file(path, [&](corpus::TextRecord&& rec) {
                corpus::RegionManifest& rm = manifest.regions[rec.region];
                corpus::CleanOutcome out = corpus::clean_record(rec);
                if (out.sentence) {
                    ++rm.accepted;
                    accepted.push_back(std::move(*out.sentence));
                } else if (out.reason == corpus::RejectReason::NonEnglish) {
                    ++rm.rejected_non_english;
                } else {
                    ++rm.rejected_too_short;
                }
            });
        manifest.malformed_lines += stats.malformed;
        log_info("parsed " + path.string() + ": " + std::to_string(stats.parsed) + " records, " +
                 std::to_string(stats.malformed) + " malformed lines skipped");
    }

    auto by_region = corpus::partition_by_region(std::move(accepted));
    for (auto& [region, rcorpus] : by_region) {
        corpus::CultureCorpus capped =
            corpus::sample_cap(std::move(rcorpus), cfg.cap, derive_seed(cfg.seed, "cap:" + region));
        std::string file = safe_name(region) + ".txt";
        corpus::write_corpus_file(cfg.corpus_dir / file, capped);
        corpus::RegionManifest& rm = manifest.regions[region];
        rm.file = file;
        rm.written = capped.sentences.size();
        rm.sampled = capped.sampled;
        log_info("region " + region + ": " + std::to_string(rm.accepted) + " accepted, " +
                 std::to_string(rm.written) + " written" + (rm.sampled ? " (capped)" : ""));
    }
    corpus::write_corpus_manifest(cfg.corpus_dir / "manifest.json", manifest);
    log_info("preprocess complete: " + std::to_string(by_region.size()) + " region file(s) in " +
             cfg.corpus_dir.string());
}

void cmd_train(const RunConfig& cfg) {
    require_dir(cfg.corpus_dir, "corpus");
    std::vector<fs::path> corpus_files;
    for (const auto& entry : fs::directory_iterator(cfg.corpus_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".txt")
            corpus_files.push_back(entry.path());
    std::sort(corpus_files.begin(), corpus_files.end());
    if (corpus_files.empty())
        throw ConfigError("no corpus .txt files in " + cfg.corpus_dir.string() +
                          "; run the preprocess command first");
    ensure_dir(cfg.model_dir);

    std::vector<embed::Algorithm> algs = cfg.algorithms;
    if (algs.empty()) algs.push_back(cfg.train.algorithm);
    // Dedupe, keeping first occurrence, so a careless config cannot train
    // the same pair twice.
    std::vector<embed::Algorithm> unique_algs;
    for (embed::Algorithm a : algs)
        if (std::find(unique_algs.begin(), unique_algs.end(), a) == unique_algs.end())
            unique_algs.push_back(a);

    uint64_t trained = 0, skipped = 0, failed = 0;
    for (embed::Algorithm alg : unique_algs) {
        for (const auto& file : corpus_files) {
            std::string region = file.stem().string();
            fs::path out = cfg.model_dir / model_filename(region, alg);
            if (fs::exists(out)) {
                try {
                    embed::load_model_header(out);
                    log_info("model exists, skipping: " + out.string());
                    ++skipped;
                    continue;
                } catch (const DataError&) {
                    log_warn("existing model file is invalid, retraining: " + out.string());
                }
            }
            embed::TrainConfig tc = cfg.train;
            tc.algorithm = alg;
            tc.seed = cfg.seed;
            try {
                log_info("training " + std::string(embed::algorithm_name(alg)) + " on " +
                         file.string());
                embed::EmbeddingModel model =
                    embed::train_embedding(embed::FileSource(file), region, tc);
                embed::save_model(model, out);
                ++trained;
                log_info("wrote " + out.string() + " (" + std::to_string(model.size()) +
                         " words)");
            } catch (const DataError& e) {
                log_warn("region " + region + " failed for " +
                         std::string(embed::algorithm_name(alg)) + ": " + e.what());
                ++failed;
            }
        }
    }
    if (trained + skipped == 0)
        throw DataError("training failed for every region/algorithm pair (" +
                        std::to_string(failed) + " failure(s))");
    log_info("train complete: " + std::to_string(trained) + " trained, " +
             std::to_string(skipped) + " skipped, " + std::to_string(failed) + " failed");
}

void cmd_correlate(const RunConfig& cfg) {
    AnalysisInputs in = load_analysis_inputs(cfg);
    std::vector<analysis::StatTable> stats = load_stats(cfg);

    std::vector<bias::WordSet> sets = in.catalog.themed;
    if (cfg.random_sets > 0) {
        std::vector<std::string> exclude = in.catalog.female.words;
        exclude.insert(exclude.end(), in.catalog.male.words.begin(), in.catalog.male.words.end());
        for (const auto& s : in.catalog.themed)
            exclude.insert(exclude.end(), s.words.begin(), s.words.end());
        std::vector<bias::WordSet> randoms = analysis::make_random_sets(
            in.models, exclude, cfg.random_sets, cfg.random_set_size, cfg.random_coverage,
            derive_seed(cfg.seed, "random-sets"));
        for (auto& r : randoms) sets.push_back(std::move(r));
    }

    analysis::MatrixOptions opt;
    opt.repeats = cfg.repeats;
    opt.subset_frac = cfg.subset_frac;
    opt.seed = cfg.seed;
    opt.metric = cfg.metric;
    opt.unit_normalize = cfg.unit_normalize;
    analysis::CorrelationMatrix matrix =
        analysis::correlation_matrix(sets, in.models, in.axes, stats, opt);
    ensure_dir(cfg.output_dir);

    std::string mcsv = "statistic";
    for (const auto& s : matrix.set_names) mcsv += "," + csv_escape(s);
    mcsv += '\n';
    std::string cells = "statistic,set,signed_r2,n_cultures,repeats,selected,error\n";
    for (size_t si = 0; si < matrix.stat_names.size(); ++si) {
        mcsv += csv_escape(matrix.stat_names[si]);
        for (size_t wi = 0; wi < matrix.set_names.size(); ++wi) {
            const analysis::MatrixCell& cell = matrix.cell(si, wi);
            mcsv += ',';
            if (cell.ok) mcsv += format_double(cell.result.signed_r2);
            else
                log_warn("cell (" + matrix.stat_names[si] + ", " + matrix.set_names[wi] +
                         ") failed: " + cell.error);
            cells += csv_escape(matrix.stat_names[si]) + "," + csv_escape(matrix.set_names[wi]);
            if (cell.ok) {
                cells += "," + format_double(cell.result.signed_r2) + "," +
                         std::to_string(cell.result.n_cultures) + "," +
                         std::to_string(cell.result.per_repeat.size()) + "," +
                         csv_escape(join_selections(cell.result.selected_words)) + ",";
            } else {
                cells += ",,,,," + csv_escape(cell.error);
            }
            cells += '\n';
        }
        mcsv += '\n';
    }
    write_text_file(cfg.output_dir / "correlation_matrix.csv", mcsv);
    write_text_file(cfg.output_dir / "cells.csv", cells);

    // One scatter file per cell: the set's full-set mean bias against the
    // statistic, over the cultures where both sides exist.
    for (const auto& set : sets) {
        analysis::WordBiasTable table =
            analysis::build_word_bias_table(set, in.models, in.axes, cfg.metric,
                                            cfg.unit_normalize);
        for (const auto& st : stats) {
            std::string sc = "culture,bias,stat\n";
            for (size_t c = 0; c < table.cultures.size(); ++c) {
                const double* sv = st.find(table.cultures[c]);
                if (!sv) {
                    log_warn("scatter " + set.name + "/" + st.name + ": culture " +
                             table.cultures[c] + " has no statistic value; excluded");
                    continue;
                }
                double sum = 0.0;
                size_t used = 0;
                for (size_t w = 0; w < table.words.size(); ++w) {
                    if (!table.defined(w, c)) continue;
                    sum += table.at(w, c);
                    ++used;
                }
                if (used == 0) {
                    log_warn("scatter " + set.name + "/" + st.name + ": culture " +
                             table.cultures[c] + " has no measurable words; excluded");
                    continue;
                }
                sc += csv_escape(table.cultures[c]) + "," +
                      format_double(sum / static_cast<double>(used)) + "," + format_double(*sv) +
                      "\n";
            }
            write_text_file(cfg.output_dir / ("scatter_" + safe_name(set.name) + "_" +
                                              safe_name(st.name) + ".csv"),
                            sc);
        }
    }
    log_info("correlate complete: " + std::to_string(matrix.stat_names.size()) + " statistic(s) x " +
             std::to_string(matrix.set_names.size()) + " set(s) in " + cfg.output_dir.string());
}

void cmd_adjectives(const RunConfig& cfg) {
    AnalysisInputs in = load_analysis_inputs(cfg);
    if (cfg.adjectives.empty())
        throw ConfigError("adjectives needs a word list; set 'adjectives' or pass --adjectives");
    require_file(cfg.adjectives, "adjective list");
    bias::WordSet adjs = bias::load_word_set(cfg.adjectives);

    std::vector<analysis::StatTable> stats = load_stats(cfg);
    const analysis::StatTable* stat = nullptr;
    if (cfg.stat_name.empty()) {
        if (stats.size() != 1) {
            std::string names;
            for (const auto& st : stats) names += (names.empty() ? "" : ", ") + st.name;
            throw ConfigError("several statistics are available (" + names +
                              "); pick one with 'stat' or --stat");
        }
        stat = &stats[0];
    } else {
        for (const auto& st : stats)
            if (st.name == cfg.stat_name) stat = &st;
        if (!stat) {
            std::string names;
            for (const auto& st : stats) names += (names.empty() ? "" : ", ") + st.name;
            throw ConfigError("statistic '" + cfg.stat_name + "' not found; available: " + names);
        }
    }

    analysis::AdjectiveReport report = analysis::adjective_scan(
        adjs, in.models, in.axes, *stat, cfg.threshold, cfg.top_k, cfg.unit_normalize);
    if (!cfg.affect_lexicon.empty()) {
        require_file(cfg.affect_lexicon, "affect lexicon");
        analysis::AffectLexicon lexicon = analysis::AffectLexicon::load_csv(cfg.affect_lexicon);
        report = analysis::affect_compare(std::move(report), lexicon);
    }

    ensure_dir(cfg.output_dir);
    std::string csv = "section,name,value,t,p,df,mean_lo,mean_hi\n";
    csv += "meta,stat," + csv_escape(report.stat_name) + ",,,,,\n";
    csv += "meta,seed," + std::to_string(cfg.seed) + ",,,,,\n";
    csv += "meta,threshold," + format_double(report.threshold) + ",,,,,\n";
    csv += "meta,top_k," + std::to_string(report.top_k) + ",,,,,\n";
    csv += "meta,scanned," + std::to_string(report.scanned) + ",,,,,\n";
    csv += "meta,skipped_coverage," + std::to_string(report.skipped_coverage) + ",,,,,\n";
    for (const auto& e : report.lo_gap_all)
        csv += "lo_gap," + csv_escape(e.word) + "," + format_double(e.r2) + ",,,,,\n";
    for (const auto& e : report.hi_gap_all)
        csv += "hi_gap," + csv_escape(e.word) + "," + format_double(e.r2) + ",,,,,\n";
    if (report.has_affect) {
        csv += "meta,affect_missing," + std::to_string(report.affect_missing) + ",,,,,\n";
        auto affect_row = [&](const char* name, const analysis::WelchOutcome& w) {
            csv += std::string("affect,") + name + ",," + format_double(w.t) + "," +
                   format_double(w.p) + "," + format_double(w.df) + "," +
                   format_double(w.mean_lo) + "," + format_double(w.mean_hi) + "\n";
        };
        affect_row("valence", report.valence);
        affect_row("dominance", report.dominance);
    }
    write_text_file(cfg.output_dir / "adjective_report.csv", csv);
    log_info("adjectives complete: " + std::to_string(report.lo_gap_all.size()) + " lo-gap, " +
             std::to_string(report.hi_gap_all.size()) + " hi-gap of " +
             std::to_string(report.scanned) + " scanned");
}

void cmd_compare(const RunConfig& cfg) {
    require_dir(cfg.wordset_dir, "word-set");
    bias::WordSetCatalog catalog = bias::load_catalog(cfg.wordset_dir);
    std::vector<analysis::StatTable> stats = load_stats(cfg);
    require_dir(cfg.model_dir, "model");

    // Fixed, documented row order: algorithms then metrics then the
    // statistic-major matrix walk.
    const embed::Algorithm kAlgs[] = {embed::Algorithm::Skipgram, embed::Algorithm::Cbow,
                                      embed::Algorithm::Glove, embed::Algorithm::FasttextSg};
    const bias::Metric kMetrics[] = {bias::Metric::AxisProjection, bias::Metric::L2Diff,
                                     bias::Metric::L2Ratio};

    std::string csv = "algorithm,metric,set,statistic,signed_r2,selected,recommended,error\n";
    uint32_t algorithms_used = 0;
    for (embed::Algorithm alg : kAlgs) {
        analysis::CultureModels models;
        try {
            models = load_models(cfg.model_dir, alg);
        } catch (const ConfigError&) {
            log_warn("no '" + std::string(embed::algorithm_name(alg)) +
                     "' models; omitting the algorithm from the comparison");
            continue;
        }
        ++algorithms_used;
        analysis::CultureAxes axes =
            analysis::make_axes(models, catalog.female, catalog.male, cfg.unit_normalize);
        for (bias::Metric metric : kMetrics) {
            analysis::MatrixOptions opt;
            opt.repeats = 1;
            opt.subset_frac = 1.0;  // feature selection on the full culture set
            opt.seed = cfg.seed;
            opt.metric = metric;
            opt.unit_normalize = cfg.unit_normalize;
            analysis::CorrelationMatrix matrix =
                analysis::correlation_matrix(catalog.themed, models, axes, stats, opt);
            bool recommended = alg == embed::Algorithm::Skipgram &&
                               metric == bias::Metric::AxisProjection;
            for (size_t si = 0; si < matrix.stat_names.size(); ++si) {
                for (size_t wi = 0; wi < matrix.set_names.size(); ++wi) {
                    const analysis::MatrixCell& cell = matrix.cell(si, wi);
                    csv += std::string(embed::algorithm_name(alg)) + "," +
                           std::string(bias::metric_name(metric)) + "," +
                           csv_escape(matrix.set_names[wi]) + "," +
                           csv_escape(matrix.stat_names[si]) + ",";
                    if (cell.ok)
                        csv += format_double(cell.result.signed_r2) + "," +
                               csv_escape(join_selections(cell.result.selected_words)) + "," +
                               (recommended ? "1" : "0") + ",";
                    else
                        csv += ",," + std::string(recommended ? "1" : "0") + "," +
                               csv_escape(cell.error);
                    csv += '\n';
                }
            }
        }
    }
    if (algorithms_used == 0)
        throw ConfigError("no models for any algorithm in " + cfg.model_dir.string());
    ensure_dir(cfg.output_dir);
    write_text_file(cfg.output_dir / "compare.csv", csv);
    log_info("compare complete: " + std::to_string(algorithms_used) + " algorithm(s) in " +
             (cfg.output_dir / "compare.csv").string());
}

synth::OracleReport cmd_synth(const RunConfig& cfg) {
    synth::SynthSpec spec;
    if (cfg.synth_spec.empty()) {
        spec = synth::SynthSpec::default_spec();
        spec.seed = cfg.seed;  // the built-in world follows the master seed
    } else {
        require_file(cfg.synth_spec, "synth spec");
        // A spec file fully defines its world, seed included.
        spec = synth::SynthSpec::parse_file(cfg.synth_spec);
    }
    log_info("generating synthetic world: " + std::to_string(spec.n_cultures) + " cultures x " +
             std::to_string(spec.sentences_per_culture) + " sentences, seed " +
             std::to_string(spec.seed));
    synth::SynthWorld world = synth::gen_world(spec);

    ensure_dir(cfg.output_dir / "corpus");
    ensure_dir(cfg.output_dir / "stats");
    ensure_dir(cfg.output_dir / "wordsets");
    for (const auto& [culture, ccorpus] : world.corpora)
        corpus::write_corpus_file(cfg.output_dir / "corpus" / (culture + ".txt"), ccorpus);

    nlohmann::json stats_manifest = nlohmann::json::object();
    for (const auto& st : world.stats) {
        std::string csv = "culture,value\n";
        for (const auto& [culture, value] : st.values)
            csv += culture + "," + format_double(value) + "\n";
        write_text_file(cfg.output_dir / "stats" / (st.name + ".csv"), csv);
        stats_manifest[st.name] = st.note;
    }
    write_text_file(cfg.output_dir / "stats" / "stats.json", stats_manifest.dump(2) + "\n");

    nlohmann::json sets_manifest = nlohmann::json::object();
    auto write_set = [&](const bias::WordSet& set) {
        std::string text;
        for (const auto& w : set.words) text += w + "\n";
        write_text_file(cfg.output_dir / "wordsets" / (set.name + ".txt"), text);
        sets_manifest[set.name] = std::string(bias::set_kind_name(set.kind));
    };
    write_set(synth::female_anchor_set(spec));
    write_set(synth::male_anchor_set(spec));
    for (const auto& theme : spec.themes) write_set(synth::theme_word_set(theme));
    write_text_file(cfg.output_dir / "wordsets" / "sets.json", sets_manifest.dump(2) + "\n");

    if (cfg.no_train) {
        log_info("--no-train: world files written, skipping training and the oracle");
        return synth::OracleReport{};
    }

    embed::TrainConfig tc = cfg.train;
    tc.seed = cfg.seed;
    // An anchor appears in every sentence; frequency subsampling would thin
    // exactly the words the oracle measures.
    tc.subsample_threshold = 0.0;
    ensure_dir(cfg.output_dir / "models");
    analysis::CultureModels models;
    for (const auto& [culture, ccorpus] : world.corpora) {
        log_info("training " + std::string(embed::algorithm_name(tc.algorithm)) + " model for " +
                 culture);
        embed::EmbeddingModel model =
            embed::train_embedding(embed::CorpusSource(ccorpus), culture, tc);
        embed::save_model(model,
                          cfg.output_dir / "models" / model_filename(culture, tc.algorithm));
        models.emplace(culture, std::move(model));
    }

    synth::OracleOptions opt;
    opt.repeats = cfg.repeats;
    opt.subset_frac = cfg.subset_frac;
    opt.seed = cfg.seed;
    opt.unit_normalize = cfg.unit_normalize;
    synth::OracleReport report = synth::pipeline_oracle_check(world, models, opt);

    std::string csv = "name,status,value,detail\n";
    csv += "seed,info," + std::to_string(spec.seed) + ",world seed\n";
    for (const auto& c : report.checks) {
        csv += csv_escape(c.name) + "," + (c.pass ? "pass" : "fail") + "," +
               format_double(c.value) + "," + csv_escape(c.detail) + "\n";
        std::string line = "oracle " + std::string(c.pass ? "pass" : "FAIL") + ": " + c.name +
                           " (" + c.detail + ")";
        if (c.pass) log_info(line);
        else log_warn(line);
    }
    write_text_file(cfg.output_dir / "oracle_report.csv", csv);
    return report;
}

}  // namespace embias::cli
