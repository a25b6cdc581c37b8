# SPDX-License-Identifier: Apache-2.0
"""Authored content of the 12-task mini corpus, shared by the fixture scripts."""

TASKS = [
    {
        "task_id": "sum_news",
        "category": "Summarization",
        "instruction": "In this task, you are given a short news article. Your job is to read the whole article carefully and write a summary of it that consists of exactly one sentence, keeping the most important facts such as who did what, where and when, and leaving out minor details.",
        "summary": "Summarize the given news article in one sentence",
        "instances": [
            ("The city council met on Tuesday evening and approved a budget that adds two new bus lines and repairs the old library roof before winter.",
             "The council approved a budget with new bus lines and library repairs."),
            ("Volunteers planted four hundred trees along the river on Saturday, hoping to reduce flooding and give shade to walkers in the summer.",
             "Volunteers planted trees by the river to reduce flooding and add shade."),
            ("A local bakery won the national bread contest this week after judges praised its sourdough loaf for its crust and rich flavor.",
             "A local bakery won the national bread contest with its sourdough."),
        ],
    },
    {
        "task_id": "sum_dialogue",
        "category": "Summarization",
        "instruction": "You will be shown a conversation between two or more people. Read every turn of the dialogue and then produce a brief summary, no longer than one sentence, that states what the speakers talked about and what they finally decided to do.",
        "summary": "Summarize the dialogue in one sentence",
        "instances": [
            ("Anna: Are we still going hiking tomorrow? Ben: The forecast says rain. Anna: Then let's visit the museum instead. Ben: Good idea, see you at ten.",
             "Anna and Ben replace their rainy hike with a museum visit at ten."),
            ("Sam: I can't find the report. Lee: It's in the shared folder. Sam: Found it, thanks. Lee: Please send comments by Friday.",
             "Lee points Sam to the report and asks for comments by Friday."),
            ("Mia: Dinner at my place tonight? Tom: Sure, should I bring something? Mia: Just dessert. Tom: I'll bring an apple pie.",
             "Tom accepts Mia's dinner invitation and will bring an apple pie."),
        ],
    },
    {
        "task_id": "title_paragraph",
        "category": "Title Generation",
        "instruction": "Given a paragraph of text, generate a short and catchy title for it. The title should capture the main topic of the paragraph, should be shorter than ten words, and must not simply copy the first sentence of the paragraph word for word.",
        "summary": "Generate a title for the given paragraph",
        "instances": [
            ("Every spring the small town holds a kite festival on the hill. Families bring homemade kites, and the sky fills with color for the whole afternoon.",
             "Colors Over the Hill: The Spring Kite Festival"),
            ("The old lighthouse was restored by a group of retired sailors who spent three summers repairing the lamp and painting the tower.",
             "Retired Sailors Bring the Lighthouse Back"),
            ("Researchers found that students who take short walks between lessons remember more of what they learn than students who stay seated.",
             "Short Walks, Better Memory"),
        ],
    },
    {
        "task_id": "title_recipe",
        "category": "Title Generation",
        "instruction": "You are given the description of a recipe, including the ingredients and the main cooking steps. Write a suitable name for the dish that a restaurant could put on its menu, using at most eight words and mentioning the main ingredient.",
        "summary": "Write a menu name for the described recipe",
        "instances": [
            ("Roast the tomatoes with garlic and olive oil, blend them with fresh basil, and serve the soup hot with toasted bread.",
             "Roasted Tomato and Basil Soup"),
            ("Slice apples thinly, layer them on puff pastry with butter and sugar, and bake until golden brown.",
             "Golden Apple Puff Tart"),
            ("Marinate chicken in lemon juice and herbs, grill it, and serve with a cold cucumber yogurt sauce.",
             "Grilled Lemon Herb Chicken with Cucumber Sauce"),
        ],
    },
    {
        "task_id": "para_sentence",
        "category": "Paraphrasing",
        "instruction": "In this task you need to paraphrase the given sentence. Rewrite the sentence using different words and a different structure while keeping its original meaning exactly the same, and do not add or remove any information from it.",
        "summary": "Paraphrase the given sentence",
        "instances": [
            ("The meeting was postponed because the manager was ill.",
             "Because the manager was sick, the meeting was moved to a later date."),
            ("She finished the marathon in under four hours.",
             "She completed the marathon in less than four hours."),
            ("The museum offers free entry on the first Sunday of each month.",
             "On the first Sunday of every month, entry to the museum is free."),
        ],
    },
    {
        "task_id": "para_question",
        "category": "Paraphrasing",
        "instruction": "You are given a question written in English. Your task is to write a new question that asks for exactly the same information but is phrased differently, so that both questions would have the same correct answer.",
        "summary": "Rephrase the given question without changing its meaning",
        "instances": [
            ("How long does it take to fly from Paris to Rome?",
             "What is the flight time between Paris and Rome?"),
            ("Who painted the ceiling of the Sistine Chapel?",
             "Which artist was responsible for painting the Sistine Chapel ceiling?"),
            ("What is the boiling point of water at sea level?",
             "At sea level, at what temperature does water boil?"),
        ],
    },
    {
        "task_id": "trans_en_fr",
        "category": "Translation",
        "output_language": "fr",
        "instruction": "In this task, you are given a sentence in the English language and your task is to convert it into the French language. In translation, keep numbers as they are and make sure the translated sentence is natural and grammatically correct.",
        "summary": "Translate the given English sentence into French",
        "instances": [
            ("The train leaves at eight in the morning.", "Le train part à huit heures du matin."),
            ("My sister likes to read books in the garden.", "Ma sœur aime lire des livres dans le jardin."),
            ("We are going to the beach tomorrow.", "Nous allons à la plage demain."),
        ],
    },
    {
        "task_id": "trans_en_es",
        "category": "Translation",
        "output_language": "es",
        "instruction": "Translate the following English sentence into Spanish. The translation must preserve the meaning of the original sentence, keep any names unchanged, and read like something a native Spanish speaker would naturally write.",
        "summary": "Translate the given English sentence into Spanish",
        "instances": [
            ("The children are playing in the park.", "Los niños están jugando en el parque."),
            ("I would like a cup of coffee, please.", "Quisiera una taza de café, por favor."),
            ("The shop closes at nine tonight.", "La tienda cierra a las nueve esta noche."),
        ],
    },
    {
        "task_id": "sent_review",
        "category": "Sentiment Analysis",
        "instruction": "In this task, you are given a review of a product or a restaurant written by a customer. You need to classify the overall sentiment expressed in the review as either Positive or Negative, based on the opinion of the writer.",
        "summary": "Classify the sentiment of the given review as Positive or Negative",
        "instances": [
            ("The soup was cold and the waiter ignored us for twenty minutes.", "Negative"),
            ("Great headphones, the sound is clear and the battery lasts all week.", "Positive"),
            ("I loved the cozy atmosphere and the friendly staff.", "Positive"),
        ],
    },
    {
        "task_id": "sent_tweet",
        "category": "Sentiment Analysis",
        "instruction": "Given a short social media post, decide whether the author expresses a positive or a negative feeling. Answer with the single word Positive or Negative, and consider emojis, sarcasm and exclamation marks when making your decision.",
        "summary": "Label the sentiment of the given post as Positive or Negative",
        "instances": [
            ("Finally finished my thesis!! Best feeling ever", "Positive"),
            ("Stuck in traffic for two hours again. Great start to the week...", "Negative"),
            ("New coffee place downtown is amazing", "Positive"),
        ],
    },
    {
        "task_id": "cat_news",
        "category": "Text Categorization",
        "instruction": "You are given a news headline or a short piece of news. Classify it into one of the following topics: World, Business, Sports, Technology, or Health. Choose the single topic that fits best and answer with the topic name only.",
        "summary": "Classify the given text into World, Business, Sports, Technology or Health",
        "instances": [
            ("Local team wins the regional football final after extra time", "Sports"),
            ("New smartphone chip promises longer battery life", "Technology"),
            ("Doctors urge people to get their flu shots early this year", "Health"),
        ],
    },
    {
        "task_id": "cat_email",
        "category": "Text Categorization",
        "instruction": "In this task you will read the text of an email message. Decide whether the email belongs to the Work, Personal or Promotions folder, based on who seems to have sent it and what it asks the reader to do, and output only the folder name.",
        "summary": "Sort the given email into Work, Personal or Promotions",
        "first_summary": "Read the email message carefully, think about who most likely sent it and what it asks the reader to do, and then decide whether it belongs in the Work, Personal or Promotions folder of the mailbox",
        "instances": [
            ("Hi team, the quarterly report is due Monday. Please upload your sections.", "Work"),
            ("Mom says dinner is at six on Sunday, don't be late!", "Personal"),
            ("Save 30% on all shoes this weekend only. Shop now!", "Promotions"),
        ],
    },
]

CATEGORIES = ["Summarization", "Title Generation", "Paraphrasing", "Translation", "Sentiment Analysis",
              "Text Categorization"]

# Verdict for feeding an output of the first category into a task of the second one.
YES_PAIRS = {
    ("Summarization", "Title Generation"), ("Summarization", "Paraphrasing"), ("Summarization", "Translation"),
    ("Summarization", "Sentiment Analysis"), ("Summarization", "Text Categorization"),
    ("Title Generation", "Paraphrasing"), ("Title Generation", "Translation"),
    ("Title Generation", "Sentiment Analysis"),
    ("Paraphrasing", "Title Generation"), ("Paraphrasing", "Translation"), ("Paraphrasing", "Sentiment Analysis"),
    ("Paraphrasing", "Text Categorization"),
}


def generate(task_id, text):
    """Second-hop output the mock returns for `task_id` applied to `text`."""
    words = text.split()
    if task_id == "sum_news":
        return "Briefly, " + " ".join(words[:10])
    if task_id == "sum_dialogue":
        return "In short, " + " ".join(words[:10])
    if task_id == "title_paragraph":
        return "A Note on " + " ".join(w.capitalize() for w in words[:4])
    if task_id == "title_recipe":
        return "Kitchen Notes: " + " ".join(words[:4])
    if task_id == "para_sentence":
        return "Put differently, " + text[0].lower() + text[1:]
    if task_id == "para_question":
        return "In other words, " + text[0].lower() + text[1:]
    if task_id == "trans_en_fr":
        return "Version française : " + text
    if task_id == "trans_en_es":
        return "Versión en español: " + text
    if task_id in ("sent_review", "sent_tweet"):
        return "Positive" if len(text) % 2 == 0 else "Negative"
    if task_id == "cat_news":
        return ["World", "Business", "Sports", "Technology", "Health"][len(text) % 5]
    if task_id == "cat_email":
        return ["Work", "Personal", "Promotions"][len(text) % 3]
    raise KeyError(task_id)
