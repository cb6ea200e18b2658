// Generated from catalog/seed.catalog.json by scripts/gen-catalog.mjs.
// Do not edit by hand; run `npm run gen`.

export interface CatalogDetail {
  steps: string[];
  examples: string[];
  stimulating_questions: string[];
  reasoning: string;
}

export interface CatalogPattern {
  id: string;
  name: string;
  level: string;
  role_tag: string | null;
  card_text: string;
  context: string;
  problem: string;
  solution: string;
  forces: string[];
  consequences: string[];
  detail: CatalogDetail;
}

export interface CatalogRelation {
  from: string;
  to: string;
  kind: string;
}

export const CATALOG_PATTERNS: CatalogPattern[] = [
  {
    "id": "explore-situation",
    "name": "Explore the Situation",
    "level": "process-phase",
    "role_tag": "explorer",
    "card_text": "What is really going on here? Gather facts, name stakeholders, restate the goal.",
    "context": "a team faces a fuzzy problem or an open opportunity and has not yet agreed what it is really about",
    "problem": "Jumping straight to solutions bakes in the first framing anyone offers, which is rarely the best one.",
    "solution": "Spend a bounded phase gathering information and resources: collect facts, name stakeholders, state the goal in several ways, and agree on what a good outcome would look like.",
    "forces": [
      "Momentum pushes toward producing answers immediately.",
      "Facts, constraints and stakeholders are scattered and partly unknown.",
      "Too much analysis delays the creative work it should feed."
    ],
    "consequences": [
      "Later idea generation starts from a shared, richer picture.",
      "The phase can become an excuse to postpone creative risk; timebox it."
    ],
    "detail": {
      "steps": [
        "Write the problem as currently understood in one sentence.",
        "List what is known, what is assumed and what is missing.",
        "Name everyone affected and what each of them wants.",
        "Restate the goal in at least three different ways and pick the most useful framing."
      ],
      "examples": [
        "Before redesigning a library entrance, the team maps who enters, when and why.",
        "A class collects newspaper clippings about food waste before proposing fixes."
      ],
      "stimulating_questions": [
        "What would surprise us if it turned out to be false?",
        "Whose view of this situation have we not heard yet?"
      ],
      "reasoning": "Exploration widens the option space before anyone commits to a direction, so the ideas generated next can draw on more material than the first framing offered."
    }
  },
  {
    "id": "generate-ideas",
    "name": "Generate Ideas",
    "level": "process-phase",
    "role_tag": "artist",
    "card_text": "Produce many ideas fast. Record everything, judge nothing yet.",
    "context": "the situation and goal are understood well enough and the team now needs many candidate ideas",
    "problem": "Groups produce few ideas when every suggestion is weighed immediately; criticism and idea production use opposite mindsets.",
    "solution": "Run a dedicated phase of rapid idea generation with evaluation explicitly postponed: every idea is recorded, none is filtered, and stimulation techniques keep the stream flowing.",
    "forces": [
      "Quantity breeds quality, but judging each idea slows everyone down.",
      "Loud voices dominate sequential discussion.",
      "Wild ideas feel risky to say out loud."
    ],
    "consequences": [
      "A large, diverse pool of raw ideas to structure and evaluate later.",
      "The board gets noisy; a later organizing pass is required."
    ],
    "detail": {
      "steps": [
        "Restate the agreed goal where everyone can see it.",
        "Set a time budget and a target count of ideas.",
        "Collect ideas from everyone in parallel, recording each one verbatim.",
        "When the stream slows, apply a stimulation pattern and continue."
      ],
      "examples": [
        "A ten-minute silent storm where each person posts every idea that comes to mind.",
        "Round-robin contribution where passing is allowed but editing is not."
      ],
      "stimulating_questions": [
        "What would we propose if failure were impossible?",
        "Which idea are we avoiding because it sounds silly?"
      ],
      "reasoning": "Separating production from judgment removes the social cost of odd ideas; volume plus diversity raises the odds that strong ideas appear at all."
    }
  },
  {
    "id": "evaluate-ideas",
    "name": "Evaluate Ideas",
    "level": "process-phase",
    "role_tag": "judge",
    "card_text": "Now judge: group, weigh merits and drawbacks, shortlist with reasons.",
    "context": "a pool of raw ideas exists and the team must decide which are worth pursuing",
    "problem": "Without explicit evaluation the loudest or latest idea wins; with premature evaluation, good ideas died before this phase began.",
    "solution": "Judge the collected ideas deliberately: group similar ones, agree on criteria tied to the goal, weigh merits and drawbacks, and select a shortlist with reasons.",
    "forces": [
      "Merits and drawbacks deserve honest weighing.",
      "Attachment to one's own ideas biases judgment.",
      "Criteria invented on the fly drift from the original goal."
    ],
    "consequences": [
      "A defensible shortlist and a record of why alternatives were set aside.",
      "Some promising but immature ideas need parking rather than rejection."
    ],
    "detail": {
      "steps": [
        "Cluster similar ideas and name each cluster.",
        "Agree on a handful of criteria drawn from the goal.",
        "Score or vote on clusters, recording notable drawbacks.",
        "Shortlist the candidates to carry forward and park the rest visibly."
      ],
      "examples": [
        "Dot-voting on clustered board items after a collection round.",
        "A benefit/concern pass over each shortlisted idea."
      ],
      "stimulating_questions": [
        "Which criterion would change the ranking if we dropped it?",
        "What would make the weakest shortlisted idea strong?"
      ],
      "reasoning": "Deferred, criteria-led judgment keeps evaluation fair to ideas produced under a no-filter rule and ties the selection back to the explored goal."
    }
  },
  {
    "id": "implement-ideas",
    "name": "Implement Ideas",
    "level": "process-phase",
    "role_tag": "warrior",
    "card_text": "Bring the chosen idea into action: owner, first step, date.",
    "context": "a shortlist of evaluated ideas exists and value only appears once something is carried into action",
    "problem": "Selected ideas stall because nobody owns the next concrete step.",
    "solution": "Turn each selected idea into owned, dated next actions; prototype the riskiest assumption first and report back to the group.",
    "forces": [
      "Enthusiasm fades quickly after a workshop ends.",
      "Real constraints surface only when work starts.",
      "Overplanning delays contact with reality."
    ],
    "consequences": [
      "Ideas meet reality early and cheaply.",
      "Requires follow-up discipline beyond the creative session itself."
    ],
    "detail": {
      "steps": [
        "For each selected idea, name an owner.",
        "Define the smallest step that tests the riskiest assumption.",
        "Set a date to review what the step revealed."
      ],
      "examples": [
        "A cardboard mock-up of a kiosk placed in the hallway for a week.",
        "A one-page pitch sent to three potential users before any build."
      ],
      "stimulating_questions": [
        "What is the cheapest way this idea could fail fast?",
        "Who outside this room must say yes, and when do we ask them?"
      ],
      "reasoning": "Ownership plus a first concrete step converts selection into momentum, and early prototypes return information no discussion can produce."
    }
  },
  {
    "id": "thought-provocation",
    "name": "Thought Provocation",
    "level": "pattern",
    "role_tag": null,
    "card_text": "Say something deliberately wrong about the problem. What does it suggest?",
    "context": "idea generation is running dry on sensible, obvious candidates",
    "problem": "Thinking stays inside the frame set by the problem statement; sensible ideas crowd out original ones.",
    "solution": "State a deliberate provocation about the situation, for example an exaggeration, a reversal or an impossible wish, then harvest the movements it triggers as real ideas.",
    "forces": [
      "Provocative statements feel unserious in a work setting.",
      "Without a push, association follows the worn paths.",
      "A provocation is useless unless the group extracts movement from it."
    ],
    "consequences": [
      "Opens directions no direct analysis would reach.",
      "Some provocations lead nowhere; treat them as disposable."
    ],
    "detail": {
      "steps": [
        "Write one provocative statement about the situation (exaggerate, reverse, or wish).",
        "Suspend judgment about the statement itself.",
        "List what the provocation would make possible or necessary.",
        "Translate each consequence back into a workable idea."
      ],
      "examples": [
        "Provocation: customers pay us to take the product away.",
        "Provocation: the school has no classrooms at all."
      ],
      "stimulating_questions": [
        "What would have to be true for this provocation to work?",
        "Which part of the provocation is secretly attractive?"
      ],
      "reasoning": "A provocation forces the mind off the main road; extracting its consequences converts shock value into usable direction."
    }
  },
  {
    "id": "combination",
    "name": "Combination",
    "level": "pattern",
    "role_tag": null,
    "card_text": "Pick two things and force a connection between them.",
    "context": "existing concepts, parts or ideas are on the table but feel exhausted on their own",
    "problem": "Treating known elements as fixed wholes hides the new things their parts could form together.",
    "solution": "Take two or more elements, including deliberately unrelated ones, and force a connection between them: ask how they join, what the hybrid would be, and what new whole their parts could form.",
    "forces": [
      "Familiar elements resist being taken apart.",
      "Random pairings are cheap to make but most are noise.",
      "Forcing a connection takes effort precisely when elements seem unrelated."
    ],
    "consequences": [
      "Produces hybrids that neither element suggests alone.",
      "Many combinations are duds; generate several before judging."
    ],
    "detail": {
      "steps": [
        "Pick two or more elements, at least one from outside the problem domain.",
        "List attributes or parts of each element.",
        "Force connections: pair attributes, merge functions, swap contexts.",
        "Describe the most interesting hybrid as a concrete idea."
      ],
      "examples": [
        "Bicycle + library: a book-lending cargo bike route.",
        "Alarm clock + coffee maker: a wake-up machine that brews on ring."
      ],
      "stimulating_questions": [
        "What does each element do that the other cannot?",
        "What would a child build from both?"
      ],
      "reasoning": "New ideas are overwhelmingly recombinations of existing material; forcing connections between unrelated elements systematically explores that space."
    }
  },
  {
    "id": "variation",
    "name": "Variation",
    "level": "pattern",
    "role_tag": null,
    "card_text": "Take what works and change one thing: bigger, inverted, swapped, rearranged.",
    "context": "a working concept exists and the team wants alternatives without starting from zero",
    "problem": "A single working version anchors everyone; alternatives never get generated.",
    "solution": "Vary the existing concept along one dimension at a time: scale it, invert it, substitute materials or roles, rearrange its parts, and keep each variant as a candidate idea.",
    "forces": [
      "The existing version works, so change feels like risk.",
      "Systematic variation is mechanical and can feel uncreative.",
      "Unbounded variation loses the qualities that made the original work."
    ],
    "consequences": [
      "A family of alternatives around a proven core.",
      "Variants stay near the original; pair with stronger stimuli for leaps."
    ],
    "detail": {
      "steps": [
        "Describe the existing concept in parts.",
        "Apply one modifier per pass: magnify, minify, substitute, rearrange, reverse.",
        "Record each variant without judging it.",
        "Mark the variants that change the concept's character, not just its size."
      ],
      "examples": [
        "A weekly market varied into a night market, a floating market, a one-stall market.",
        "A lecture varied into a walk, the students lecturing, or silence plus reading."
      ],
      "stimulating_questions": [
        "Which single part, if changed, changes everything?",
        "What is the smallest variation with the largest effect?"
      ],
      "reasoning": "Dimension-wise variation turns one proven idea into a searchable neighborhood, trading leap distance for reliability."
    }
  },
  {
    "id": "change-of-perspective",
    "name": "Change of Perspective",
    "level": "pattern",
    "role_tag": null,
    "card_text": "Look at the problem through different eyes. What changes?",
    "context": "explore the problem field, find or evaluate ideas",
    "problem": "Looking at things only from one direction makes it likely to miss important facts, potential paths and undesired consequences.",
    "solution": "Deliberately look at the situation from different angles: another stakeholder, an outside persona, the reversed goal, or the solution itself, and record what each angle reveals.",
    "forces": [
      "One's own viewpoint feels complete from the inside.",
      "Other perspectives are available but taking them needs deliberate effort.",
      "Some viewpoints are uncomfortable to adopt."
    ],
    "consequences": [
      "New potentials, liabilities and interpretations become visible.",
      "Adopted perspectives are caricatures; verify findings with the real stakeholders."
    ],
    "detail": {
      "steps": [
        "Fix the object to examine: the problem, a candidate idea, or the goal.",
        "Choose a perspective distinctly different from your own.",
        "Describe the situation honestly from inside that perspective.",
        "Harvest what the new angle revealed and repeat with another angle."
      ],
      "examples": [
        "Describing a supermarket checkout from the perspective of an eight-year-old.",
        "Evaluating a course redesign as the busiest student would."
      ],
      "stimulating_questions": [
        "Who would hate this idea, and why?",
        "What does this situation look like from ten years in the future?"
      ],
      "reasoning": "To understand all the potentials and liabilities, to see new paths and solutions, to give new meanings to a situation, you must look at it from different angles; every variant of this pattern applies that one principle."
    }
  },
  {
    "id": "random-impulse",
    "name": "Random Impulse",
    "level": "pattern",
    "role_tag": null,
    "card_text": "Draw a random word or image. Bridge from it to your problem.",
    "context": "associations keep returning to the same ideas and the group needs an unbiased push",
    "problem": "Directed thinking follows existing associations, so the same ideas keep coming back.",
    "solution": "Introduce a genuinely random stimulus, such as a word, an image or an object, and force a bridge between the stimulus and the problem before judging its usefulness.",
    "forces": [
      "Stimuli chosen by the group are never truly unbiased.",
      "A random stimulus may seem irrelevant and get dismissed.",
      "The value lies in the forced bridge, not the stimulus itself."
    ],
    "consequences": [
      "Breaks fixation cheaply and repeatably.",
      "Quality varies by draw; redrawing too quickly defeats the exercise."
    ],
    "detail": {
      "steps": [
        "Draw one random stimulus without choosing.",
        "List properties and associations of the stimulus itself.",
        "Force a bridge from each property to the problem.",
        "Keep the ideas the bridges produced; discard the stimulus."
      ],
      "examples": [
        "A randomly drawn word 'lighthouse' leading to a beacon feature for lost users.",
        "A random photo of a queue prompting ideas about waiting experiences."
      ],
      "stimulating_questions": [
        "What would this stimulus solve if it were the answer?",
        "Which property of the stimulus does the problem secretly share?"
      ],
      "reasoning": "An unbiased direction of thought cannot be produced by choice; randomness supplies the unbiased entry point and the forced bridge converts it into relevant material."
    }
  },
  {
    "id": "metaphor",
    "name": "Metaphor",
    "level": "pattern",
    "role_tag": null,
    "card_text": "Our situation is like a … what? Map the parts across.",
    "context": "the situation is hard to grasp directly or discussion has gone abstract and stale",
    "problem": "Abstract descriptions of a situation hide its structure; people talk past each other.",
    "solution": "Describe the current situation as some other concept, then map its parts: ask which parts of the source correspond to which parts of the problem and where the mapping breaks.",
    "forces": [
      "A vivid source domain imports rich structure, right or wrong.",
      "Mappings illuminate some aspects and hide others.",
      "Taking a metaphor literally misleads."
    ],
    "consequences": [
      "Shared vivid language and transferred solution structure.",
      "Every metaphor limps; note where it breaks down."
    ],
    "detail": {
      "steps": [
        "Choose or draw a source concept for the metaphor.",
        "List the source's parts, roles and dynamics.",
        "Map each part onto the current situation and note the analogues.",
        "Mark where the metaphor breaks and mine the breaks for insight."
      ],
      "examples": [
        "Treating a support inbox as an emergency room with triage roles.",
        "Seeing a curriculum as a hiking trail with base camps and summits."
      ],
      "stimulating_questions": [
        "What is the engine of the source concept, and what is ours?",
        "Where does the metaphor flatter us?"
      ],
      "reasoning": "A metaphor transfers an entire solved structure onto an unsolved situation at once; mapping part by part makes the transfer checkable instead of decorative."
    }
  },
  {
    "id": "stakeholder-eyes",
    "name": "Through Stakeholders' Eyes",
    "level": "variant",
    "role_tag": null,
    "card_text": "Pick a stakeholder. Describe the problem exactly as they would.",
    "context": "real people with known interests are affected by the problem and their views differ from the team's",
    "problem": "The team designs for an imagined average user while actual stakeholders have sharper, conflicting needs.",
    "solution": "Look at the problem with the eyes of each concrete stakeholder in turn: state their goals, fears and daily reality, and describe the situation as they would.",
    "forces": [
      "Stakeholders are concrete and reachable but consulting them takes time.",
      "Role-playing a known person risks caricature.",
      "Conflicting stakeholder needs cannot all be satisfied."
    ],
    "consequences": [
      "Grounded requirements and early detection of conflicts between groups.",
      "Findings remain hypotheses until checked with the real people."
    ],
    "detail": {
      "steps": [
        "List the concrete stakeholders affected.",
        "For one stakeholder, write their goals, fears and constraints.",
        "Retell the problem in their words.",
        "Repeat for a stakeholder who wants the opposite."
      ],
      "examples": [
        "A timetable change described by a commuting student, then by a lecturer.",
        "A checkout redesign described by a cashier on a double shift."
      ],
      "stimulating_questions": [
        "Which stakeholder loses if we succeed?",
        "Whose silence are we mistaking for agreement?"
      ],
      "reasoning": "Concrete persons with interests expose requirements and conflicts that an averaged 'user' hides; speaking in their words keeps the exercise honest."
    }
  },
  {
    "id": "fictional-hero",
    "name": "Fictional Hero",
    "level": "variant",
    "role_tag": null,
    "card_text": "What would superman do?",
    "context": "the group is stuck in its own professional frame and needs a radically different problem-solving style",
    "problem": "Professional habits constrain which solution styles are even considered.",
    "solution": "Ask how a well-known figure would tackle the problem, such as a superhero or a famous detective, and translate their characteristic method into feasible terms.",
    "forces": [
      "Fictional characters carry well-known, extreme methods.",
      "Playfulness lowers the stakes of proposing wild approaches.",
      "The character's powers are unavailable; only the style transfers."
    ],
    "consequences": [
      "Unlocks solution styles outside the team's habits.",
      "Output needs explicit translation back to reality."
    ],
    "detail": {
      "steps": [
        "Pick a fictional figure with a distinctive method.",
        "Describe how that figure would attack the problem, powers included.",
        "Extract the underlying strategy from the fantasy.",
        "Restate the strategy with means the team actually has."
      ],
      "examples": [
        "Sherlock Holmes on a quality problem: exhaustive observation before any hypothesis.",
        "Superman on logistics: act where the crisis is, instantly; translate to on-site presence."
      ],
      "stimulating_questions": [
        "What does this hero never worry about, and can we stop worrying about it too?",
        "Which of the hero's habits is secretly available to us?"
      ],
      "reasoning": "A vivid character bundles an entire problem-solving style into one prompt; the fantasy is scaffolding for a transferable strategy."
    }
  },
  {
    "id": "goal-reversal",
    "name": "Goal Reversal",
    "level": "variant",
    "role_tag": null,
    "card_text": "How would we guarantee failure? List it, then invert it.",
    "context": "the stated goal produces only dutiful, predictable ideas",
    "problem": "Working toward a goal exercises the same associations every time; the failure modes stay invisible.",
    "solution": "Reverse the goal and plan for the opposite: ask how to make the problem worse or guarantee failure, then invert each answer into a safeguard or an idea.",
    "forces": [
      "Inverting a goal feels absurd and slightly subversive.",
      "Failure modes are easier to enumerate than success factors.",
      "The inversion must be mapped back or it is just a joke."
    ],
    "consequences": [
      "Fast, energetic idea streams and a checklist of real risks.",
      "Needs the inversion step; raw reversals are not proposals."
    ],
    "detail": {
      "steps": [
        "State the goal, then write its exact opposite.",
        "Brainstorm ways to achieve the reversed goal thoroughly.",
        "Invert each answer into a preventive measure or positive idea.",
        "Keep the inversions that are new to the team."
      ],
      "examples": [
        "How do we make sure nobody visits the library? Hide the entrance; therefore: make it visible from the street.",
        "How do we lose every customer in a month? Ignore complaints; therefore: answer within a day."
      ],
      "stimulating_questions": [
        "Which failure strategy are we accidentally executing today?",
        "What is the most embarrassing way to fail?"
      ],
      "reasoning": "Minds enumerate ways to break things more fluently than ways to build them; reversal exploits that fluency and the inversion step converts it into constructive material."
    }
  },
  {
    "id": "be-the-solution",
    "name": "Be the Solution",
    "level": "variant",
    "role_tag": null,
    "card_text": "You are the solution. Speak as it: what happens to you all day?",
    "context": "discussion treats the product or process as an external object and empathy with it has run out",
    "problem": "Talking about a thing from the outside misses how it behaves from the inside.",
    "solution": "Imagine being the solution itself: speak in first person as the product, process or space, narrating what happens to you, what you need and where you hurt.",
    "forces": [
      "First-person imagination reveals interactions abstract analysis skips.",
      "Adults resist pretending to be an object.",
      "Inside views are vivid but partial."
    ],
    "consequences": [
      "Surfaces interaction details and failure points from the inside.",
      "Works best combined with an outside check afterwards."
    ],
    "detail": {
      "steps": [
        "Choose the artifact or process to impersonate.",
        "Narrate a day in first person as that thing.",
        "Note where you are ignored, misused, or overloaded.",
        "Turn each pain point into a design idea."
      ],
      "examples": [
        "Being the shared printer: 'At nine everyone queues at me; nobody refills my paper.'",
        "Being the onboarding form: 'People abandon me at field twelve.'"
      ],
      "stimulating_questions": [
        "As the solution, what do you wish humans knew about you?",
        "When are you happiest, and who made that happen?"
      ],
      "reasoning": "First-person simulation recruits embodied imagination, exposing frictions and needs that third-person description of the same object leaves invisible."
    }
  },
  {
    "id": "word-list",
    "name": "Word List",
    "level": "variant",
    "role_tag": null,
    "card_text": "Draw a word blindly. The first word is the word.",
    "context": "a quick, repeatable source of random stimuli is needed during a live session",
    "problem": "Groups pick 'random' words that are secretly on-topic, which defeats the stimulus.",
    "solution": "Draw words blindly from a prepared list of concrete nouns and use the first draw as the impulse, bridging from the word to the problem.",
    "forces": [
      "A prepared list makes draws instant and truly blind.",
      "Very familiar words trigger worn associations.",
      "Drawing again and again to find a 'good' word reintroduces bias."
    ],
    "consequences": [
      "Zero-setup random impulses on demand.",
      "Concrete nouns work better than abstract terms; curate the list once."
    ],
    "detail": {
      "steps": [
        "Draw one word from the list without looking.",
        "List the word's properties and typical surroundings.",
        "Bridge each property to the problem.",
        "Write down every idea the bridges produce."
      ],
      "examples": [
        "Drawn word 'anchor' leading to ideas about fixing meeting times.",
        "Drawn word 'greenhouse' leading to a protected trial area for new features."
      ],
      "stimulating_questions": [
        "What does this word smell, sound or feel like?",
        "Who uses this object daily, and what do they know?"
      ],
      "reasoning": "A pre-authored list removes choice from stimulus selection, preserving the unbiased quality that makes a random impulse effective."
    }
  },
  {
    "id": "random-book-page",
    "name": "Random Book Page",
    "level": "variant",
    "role_tag": null,
    "card_text": "Open a book anywhere. The first thing you see is your impulse.",
    "context": "printed or digital reading material is at hand and the group wants richer stimuli than single words",
    "problem": "Single-word stimuli can be too thin to trigger associations for complex problems.",
    "solution": "Randomly open a book or journal, take the first phrase or picture that stands out, and bridge from it to the current problem.",
    "forces": [
      "A page offers images, phrases and topics at once.",
      "Rich stimuli tempt the group into reading instead of ideating.",
      "Whatever the page shows must be used, or bias returns."
    ],
    "consequences": [
      "Richer, scene-like stimuli with context attached.",
      "Sessions need a rule against browsing for a better page."
    ],
    "detail": {
      "steps": [
        "Open the book or journal at an arbitrary page without peeking.",
        "Take the first phrase or image that catches the eye.",
        "Describe what it shows in neutral terms.",
        "Force a bridge from that content to the problem."
      ],
      "examples": [
        "A sailing magazine page showing a yacht prompting the question what parts of a boat are analogue to the current problem.",
        "A cookbook step 'let it rest' prompting ideas about pauses in a workflow."
      ],
      "stimulating_questions": [
        "What is the page's subject an expert in?",
        "What rule from this page's world would help in ours?"
      ],
      "reasoning": "An arbitrary page delivers a bundle of unplanned concepts with built-in context, giving associations more hooks than an isolated word."
    }
  },
  {
    "id": "first-thing-outside",
    "name": "First Thing Outside",
    "level": "variant",
    "role_tag": null,
    "card_text": "Look outside. The first thing you see is your impulse.",
    "context": "the session is near a window or a walk is possible and no prepared material is available",
    "problem": "Without prepared material, groups lack an unbiased stimulus source.",
    "solution": "Use the first thing you see outside as the random impulse: commit to the first object noticed and bridge from it to the problem.",
    "forces": [
      "The environment is always available and costs nothing.",
      "The eye is drawn to the interesting, which is a bias.",
      "Real-world scenes carry living detail no card provides."
    ],
    "consequences": [
      "Works anywhere, instantly, with zero preparation.",
      "Committing to the literal first object is the whole discipline."
    ],
    "detail": {
      "steps": [
        "Look out of the window or step outside.",
        "Commit to the first object your eye lands on.",
        "List what that object does, needs and endures.",
        "Bridge each point to the problem."
      ],
      "examples": [
        "Seeing a postman and asking how a postman would tackle the problem.",
        "Seeing scaffolding and asking what temporary support our process needs."
      ],
      "stimulating_questions": [
        "What does this object do all day when nobody watches?",
        "What would break first if this object vanished?"
      ],
      "reasoning": "Committing to the first percept turns the environment into a bias-free deck; the discipline of no second choice preserves randomness."
    }
  },
  {
    "id": "extreme-collaboration",
    "name": "Extreme Collaboration",
    "level": "pattern",
    "role_tag": null,
    "card_text": "Everyone sends at once. Every idea lands on the shared board, unfiltered.",
    "context": "a group with personal devices must produce a large pool of ideas together in little time",
    "problem": "Sequential contribution through one channel means the loudest speak, others wait, and a facilitator filters thoughts too early.",
    "solution": "Connect individual and shared work spaces: everyone enters ideas, thoughts and media on their own device and sends them simultaneously to one shared, ordered board where every contribution lands unfiltered.",
    "forces": [
      "Parallel writing multiplies throughput but floods the shared space.",
      "Anonymity of the stream lowers the barrier for quiet contributors.",
      "Early filtering saves space but kills ideas before they exist for the group."
    ],
    "consequences": [
      "A huge quantity of items arrives in parallel; every idea matters and is visible.",
      "More time is available to organize, follow up and evaluate ideas afterwards.",
      "The flood requires structuring tools once collection ends."
    ],
    "detail": {
      "steps": [
        "Open a shared session and let everyone join from their own device.",
        "Collect contributions in parallel with no filtering and no early discussion.",
        "Keep collecting past the first lull; the second wave differs from the first.",
        "Close collection, then organize and evaluate the board together."
      ],
      "examples": [
        "A class of thirty sending ideas and photos to one projected board within two minutes.",
        "A distributed team filling a board before the meeting where they discuss it."
      ],
      "stimulating_questions": [
        "Which voices appear on the board that never speak in the room?",
        "What arrives when nobody has to wait for a turn?"
      ],
      "reasoning": "Parallel, unfiltered contribution removes the serial bottleneck and the social gatekeepers at once, trading curation during collection for structure applied afterwards."
    }
  }
];

export const CATALOG_RELATIONS: CatalogRelation[] = [
  {
    "from": "explore-situation",
    "to": "generate-ideas",
    "kind": "followed-by"
  },
  {
    "from": "generate-ideas",
    "to": "evaluate-ideas",
    "kind": "followed-by"
  },
  {
    "from": "evaluate-ideas",
    "to": "implement-ideas",
    "kind": "followed-by"
  },
  {
    "from": "thought-provocation",
    "to": "generate-ideas",
    "kind": "alternative-to"
  },
  {
    "from": "combination",
    "to": "generate-ideas",
    "kind": "alternative-to"
  },
  {
    "from": "variation",
    "to": "generate-ideas",
    "kind": "alternative-to"
  },
  {
    "from": "change-of-perspective",
    "to": "generate-ideas",
    "kind": "alternative-to"
  },
  {
    "from": "random-impulse",
    "to": "generate-ideas",
    "kind": "alternative-to"
  },
  {
    "from": "metaphor",
    "to": "generate-ideas",
    "kind": "alternative-to"
  },
  {
    "from": "change-of-perspective",
    "to": "evaluate-ideas",
    "kind": "followed-by"
  },
  {
    "from": "stakeholder-eyes",
    "to": "change-of-perspective",
    "kind": "refines"
  },
  {
    "from": "fictional-hero",
    "to": "change-of-perspective",
    "kind": "refines"
  },
  {
    "from": "goal-reversal",
    "to": "change-of-perspective",
    "kind": "refines"
  },
  {
    "from": "be-the-solution",
    "to": "change-of-perspective",
    "kind": "refines"
  },
  {
    "from": "word-list",
    "to": "random-impulse",
    "kind": "refines"
  },
  {
    "from": "random-book-page",
    "to": "random-impulse",
    "kind": "refines"
  },
  {
    "from": "first-thing-outside",
    "to": "random-impulse",
    "kind": "refines"
  },
  {
    "from": "random-impulse",
    "to": "combination",
    "kind": "blends-with"
  },
  {
    "from": "random-impulse",
    "to": "metaphor",
    "kind": "blends-with"
  },
  {
    "from": "random-impulse",
    "to": "change-of-perspective",
    "kind": "blends-with"
  },
  {
    "from": "extreme-collaboration",
    "to": "generate-ideas",
    "kind": "refines"
  },
  {
    "from": "extreme-collaboration",
    "to": "evaluate-ideas",
    "kind": "followed-by"
  }
];
