// include/svkit/text_io.h

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

#ifndef SVKIT_TEXT_IO_H_
#define SVKIT_TEXT_IO_H_

#include <string>
#include <vector>

#include "svkit/corpus.h"

// Canonical text interchange (UTF-8, LF, single-space separated). Ids are
// whitespace-free tokens; whitespace is the field separator.
//
//   embeddings:  utt_id speaker_id video_id D v1 v2 ... vD
//   trials:      label enroll_utt test_utt          (label in {0,1})
//   scores:      enroll_utt test_utt score
//   rejections:  utt_id round similarity
//
// Embedding values are written with 9 significant digits; scores and
// similarities with 6 decimals. Any bad line aborts the whole load with a
// "malformed line N"-style error; no partial results are returned.

namespace svkit {

CorpusManifest load_embeddings(const std::string& path);
void save_embeddings(const CorpusManifest& manifest, const std::string& path);

TrialList load_trials(const std::string& path);
void save_trials(const TrialList& trials, const std::string& path);

ScoreSet load_scores(const std::string& path);
void save_scores(const ScoreSet& scores, const std::string& path);

RejectionList load_rejections(const std::string& path);
void save_rejections(const RejectionList& rejections, const std::string& path);

namespace io_detail {

// Low-level helpers shared by the other modules' text formats.

std::vector<std::string> read_lines(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

std::vector<std::string> split_fields(const std::string& line);
double parse_real(const std::string& token, const std::string& path, std::size_t line_no);
long parse_int(const std::string& token, const std::string& path, std::size_t line_no);
[[noreturn]] void malformed(const std::string& path, std::size_t line_no,
                            const std::string& what);

/// Rejects ids containing whitespace (they would not round-trip).
void require_token(const std::string& id, const std::string& context);

std::string format_real9(double v);  // %.9g
std::string format_real6(double v);  // %.6f

}  // namespace io_detail

}  // namespace svkit

#endif  // SVKIT_TEXT_IO_H_
