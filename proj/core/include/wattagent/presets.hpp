#pragma once

#include "wattagent/corpus.hpp"
#include "wattagent/emissions.hpp"
#include "wattagent/pipeline.hpp"

namespace wattagent {

// Reference configurations for the two bundled agents, with their published
// constants baked in so estimates are reproducible offline.
//
// mindact-paper: two stages over Mind2Web-sized pages.
//   candidate-generation  DeBERTa-86M, 4e-6 Wh/token (measured), reads the
//                         whole page once with a DOM-expansion multiplier of
//                         [1, 3].
//   action-prediction     flan-T5-XL, 102e-6 Wh/token (measured), 10 batches
//                         of 512 fixed tokens.
//
// laser-paper: one stage, GPT-4 at 0.03125 Wh/token derived via the cost
// proxy (share 0.5 of $1e-5/token over $0.16/kWh), reading the raw page once.
AgentPipeline mindact_paper_pipeline();
AgentPipeline laser_paper_pipeline();

// Published corpus means the presets were calibrated against: 118798 tokens
// per page under the DeBERTa tokenizer, 93778 under the GPT-4 tokenizer.
CorpusStats mindact_paper_corpus_stats();
CorpusStats laser_paper_corpus_stats();

// Mind2Web task shape: 7.3 actions per task on average, capped at 15.
TaskProfile mind2web_task_profile();

} // namespace wattagent
