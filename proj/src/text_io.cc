// src/text_io.cc

// Copyright 2026  svkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "svkit/text_io.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace svkit {
namespace io_detail {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return lines;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

void malformed(const std::string& path, std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << path << ": malformed line " << line_no << ": " << what;
  throw ValidationError(os.str());
}

double parse_real(const std::string& token, const std::string& path, std::size_t line_no) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    malformed(path, line_no, "bad numeric value '" + token + "'");
  if (!std::isfinite(value))
    malformed(path, line_no, "non-finite value '" + token + "'");
  return value;
}

long parse_int(const std::string& token, const std::string& path, std::size_t line_no) {
  long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    malformed(path, line_no, "bad integer '" + token + "'");
  return value;
}

void require_token(const std::string& id, const std::string& context) {
  if (id.empty()) throw ValidationError(context + ": empty id");
  for (char c : id)
    if (std::isspace(static_cast<unsigned char>(c)))
      throw ValidationError(context + ": id '" + id + "' contains whitespace");
}

std::string format_real9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string format_real6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace io_detail

using namespace io_detail;

CorpusManifest load_embeddings(const std::string& path) {
  const auto lines = read_lines(path);
  CorpusManifest manifest;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split_fields(lines[i]);
    if (fields.size() < 4)
      malformed(path, line_no, "expected 'utt spk vid dim values...'");
    const long dim = parse_int(fields[3], path, line_no);
    if (dim <= 0) malformed(path, line_no, "dimension must be positive");
    if (fields.size() != 4 + static_cast<std::size_t>(dim))
      malformed(path, line_no, "expected " + std::to_string(dim) + " values, got " +
                                   std::to_string(fields.size() - 4));
    Embedding emb;
    emb.values.reserve(static_cast<std::size_t>(dim));
    for (long d = 0; d < dim; ++d)
      emb.values.push_back(parse_real(fields[4 + static_cast<std::size_t>(d)], path, line_no));
    try {
      manifest.add({fields[0], fields[1], fields[2]}, std::move(emb));
    } catch (const ValidationError& e) {
      malformed(path, line_no, e.what());
    }
  }
  return manifest;
}

void save_embeddings(const CorpusManifest& manifest, const std::string& path) {
  std::string out;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const UtteranceRecord& rec = manifest.record_at(i);
    require_token(rec.utt_id, "save embeddings");
    require_token(rec.speaker_id, "save embeddings");
    require_token(rec.video_id, "save embeddings");
    const Embedding& emb = manifest.embedding_at(i);
    out += rec.utt_id;
    out += ' ';
    out += rec.speaker_id;
    out += ' ';
    out += rec.video_id;
    out += ' ';
    out += std::to_string(emb.dim());
    for (double v : emb.values) {
      out += ' ';
      out += format_real9(v);
    }
    out += '\n';
  }
  write_file(path, out);
}

TrialList load_trials(const std::string& path) {
  const auto lines = read_lines(path);
  TrialList list;
  list.trials.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 3)
      malformed(path, line_no, "expected 'label enroll test'");
    const long label = parse_int(fields[0], path, line_no);
    if (label != 0 && label != 1)
      malformed(path, line_no, "invalid label '" + fields[0] + "'");
    list.trials.push_back({static_cast<int>(label), fields[1], fields[2]});
  }
  return list;
}

void save_trials(const TrialList& trials, const std::string& path) {
  std::string out;
  for (const Trial& t : trials.trials) {
    require_token(t.enroll_utt, "save trials");
    require_token(t.test_utt, "save trials");
    if (t.label != 0 && t.label != 1)
      throw ValidationError("save trials: invalid label");
    out += std::to_string(t.label);
    out += ' ';
    out += t.enroll_utt;
    out += ' ';
    out += t.test_utt;
    out += '\n';
  }
  write_file(path, out);
}

ScoreSet load_scores(const std::string& path) {
  const auto lines = read_lines(path);
  ScoreSet set;
  set.scores.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 3)
      malformed(path, line_no, "expected 'enroll test score'");
    set.scores.push_back({fields[0], fields[1], parse_real(fields[2], path, line_no)});
  }
  return set;
}

void save_scores(const ScoreSet& scores, const std::string& path) {
  std::string out;
  for (const ScoreEntry& s : scores.scores) {
    require_token(s.enroll_utt, "save scores");
    require_token(s.test_utt, "save scores");
    if (!std::isfinite(s.score)) throw ValidationError("save scores: non-finite score");
    out += s.enroll_utt;
    out += ' ';
    out += s.test_utt;
    out += ' ';
    out += format_real6(s.score);
    out += '\n';
  }
  write_file(path, out);
}

RejectionList load_rejections(const std::string& path) {
  const auto lines = read_lines(path);
  RejectionList list;
  list.entries.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split_fields(lines[i]);
    if (fields.size() != 3)
      malformed(path, line_no, "expected 'utt round similarity'");
    const long round = parse_int(fields[1], path, line_no);
    if (round <= 0) malformed(path, line_no, "round must be positive");
    const double sim = parse_real(fields[2], path, line_no);
    if (sim < -1.0 || sim > 1.0)
      malformed(path, line_no, "similarity outside [-1, 1]");
    list.entries.push_back({fields[0], static_cast<int>(round), sim});
  }
  try {
    list.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return list;
}

void save_rejections(const RejectionList& rejections, const std::string& path) {
  rejections.validate();
  std::string out;
  for (const Rejection& r : rejections.entries) {
    require_token(r.utt_id, "save rejections");
    out += r.utt_id;
    out += ' ';
    out += std::to_string(r.round);
    out += ' ';
    out += format_real6(r.similarity);
    out += '\n';
  }
  write_file(path, out);
}

}  // namespace svkit
