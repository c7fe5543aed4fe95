/* Copyright 2026 The RECAP Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "recap/artifact/modality.hpp"

#include <set>
#include <string>

#include "recap/common/text.hpp"

namespace recap::artifact {

namespace {

const std::set<std::string, std::less<>> kCodeExtensions = {
    "py",  "ipynb", "r",    "rmd",   "jl",  "m",     "c",    "cc",   "cpp", "cxx", "h",    "hh",  "hpp",
    "java", "js",   "ts",   "go",    "rs",  "scala", "sh",   "bash", "pl",  "rb",  "lua",  "f",   "f90",
    "f95", "cu",    "cuh",  "swift", "kt",  "cs",    "php",  "hs",   "ml",  "clj", "ex",   "erl", "sas",
    "do",  "nb",    "wl",   "mlx",   "pyx", "cmake", "mk",   "ps1",  "bat", "sql", "groovy"};

const std::set<std::string, std::less<>> kCodeNames = {"makefile",   "gnumakefile", "dockerfile", "cmakelists.txt",
                                                       "setup.py",   "pyproject.toml", "requirements.txt",
                                                       "environment.yml", "cargo.toml", "package.json",
                                                       "build.gradle", "pom.xml", "description", "snakefile"};

const std::set<std::string, std::less<>> kDataExtensions = {
    "csv",  "tsv",    "xlsx", "xls",   "ods",   "parquet", "feather", "arrow", "h5",   "hdf5", "hdf",
    "nc",   "npy",    "npz",  "mat",   "arff",  "pkl",     "pickle",  "rds",   "rdata", "rda", "sav",
    "dta",  "sas7bdat", "jsonl", "ndjson", "db", "sqlite",  "sqlite3", "dat",   "tfrecord", "avro",
    "orc",  "fits",   "fasta", "fastq", "vcf", "bam",      "sam",     "nii",   "dcm",  "las",  "shp",
    "geojson", "gpkg", "libsvm", "svmlight", "mtx", "edf", "wav",  "flac"};

const std::set<std::string, std::less<>> kDataDirs = {"data", "dataset", "datasets", "results", "raw",
                                                      "processed", "output", "outputs"};

std::string extension_of(std::string_view name) {
  const size_t dot = name.rfind('.');
  if (dot == std::string_view::npos || dot == 0) return "";
  return text::to_lower(name.substr(dot + 1));
}

}  // namespace

FileKind classify_file(std::string_view path) {
  const size_t slash = path.rfind('/');
  const std::string_view name = slash == std::string_view::npos ? path : path.substr(slash + 1);
  const std::string lower = text::to_lower(name);
  const std::string ext = extension_of(name);
  if (kCodeNames.count(lower) || kCodeExtensions.count(ext)) return FileKind::kCode;
  if (kDataExtensions.count(ext)) return FileKind::kData;
  if (slash != std::string_view::npos) {
    for (const auto& dir : text::split(path.substr(0, slash), '/')) {
      if (kDataDirs.count(text::to_lower(dir))) return FileKind::kData;
    }
  }
  return FileKind::kOther;
}

Modality classify_modality(const ModalityEvidence& e) {
  if (!e.artifact_linked) return e.has_supplement ? Modality::kPdfOnly : Modality::kNone;
  if (e.has_code && e.has_data) return Modality::kCodeAndData;
  if (e.has_code) return Modality::kCodeOnly;
  if (e.has_data) return Modality::kDataOnly;
  if (e.artifact_reachable) return Modality::kUnspecified;
  return e.has_supplement ? Modality::kPdfOnly : Modality::kUnspecified;
}

ModalityEvidence census(const std::vector<const RepositorySnapshot*>& snapshots, bool has_supplementary_pdf) {
  ModalityEvidence e;
  e.has_supplement = has_supplementary_pdf;
  for (const RepositorySnapshot* s : snapshots) {
    if (!s) continue;
    e.artifact_linked = true;
    if (s->fetch_status != FetchStatus::kOk) continue;
    e.artifact_reachable = true;
    for (const auto& f : s->files) {
      switch (classify_file(f.path)) {
        case FileKind::kCode: e.has_code = true; break;
        case FileKind::kData: e.has_data = true; break;
        case FileKind::kOther: break;
      }
    }
  }
  return e;
}

Modality classify_modality(const RepositorySnapshot* snapshot, bool has_supplementary_pdf) {
  return classify_modality(census({snapshot}, has_supplementary_pdf));
}

Modality classify_modality(const std::vector<const RepositorySnapshot*>& snapshots, bool has_supplementary_pdf) {
  return classify_modality(census(snapshots, has_supplementary_pdf));
}

}  // namespace recap::artifact
