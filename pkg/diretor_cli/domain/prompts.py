"""
Textos de prompt do diretor e do juiz

Os textos em inglês são enviados aos modelos exatamente como estão; os
trechos entre chaves são preenchidos pelos serviços de narração e avaliação.
"""

CAPTION_QUESTION = "What is the image about"

PLACEHOLDER_DESCRIPTION = "an unrecognized scene"

# Descrição da tarefa: cada entrada é uma frase; as que dependem de um campo
# vazio são omitidas por inteiro.
TASK_OPENING = (
    "I have a collection of photos and videos, but their order is chaotic."
)
TASK_ARRANGE_WITH_THEME = (
    "I hope you can help me arrange these materials in a certain order to create a video "
    "centered around the theme {theme}."
)
TASK_ARRANGE_WITHOUT_THEME = (
    "I hope you can help me arrange these materials in a certain order to create a video."
)
TASK_SCRIPT = (
    "Additionally, I'd like you to provide a smoothly written script that connects these "
    "images and videos into a cohesive story."
)
TASK_LOCATION = "The photos and videos were taken at {location}."
TASK_TIME = "They were captured at {time}"
TASK_CLOSING = (
    "I will provide descriptions for each image or video to give you an understanding of "
    "their content."
)

REQUIREMENTS_HEADER = "I need you to do two things:"
REQUIREMENTS_STEP_ONE = (
    "(1) Rearrange the materials, grouping similar images together. If there's a clear "
    "timeline, arrange them in chronological order, otherwise, organize them based on your "
    "logical sequence."
)
REQUIREMENTS_STEP_TWO = "(2) Write a script according to the adjusted material sequence."
REQUIREMENTS_USER = "I hope your script meets the following requirements: {requirement}."
REQUIREMENTS_STYLE = (
    "It should be concise, fluent, vivid, and the transitions between different materials "
    "should be natural. Each caption for the materials should not exceed 20 words."
)
REQUIREMENTS_TAIL = """Also, please recommend a piece of instrumental music that suits this video.
Finally, you should first rearrange the materials and then write corresponding captions based on the rearranged sequence. Below is an example output format:
Order: (A sequence of Arabic numbers separated by commas, indicating the adjusted order of materials in your script)
Title: A title for the beginning of the video, not exceeding 5 words
Materials: Content of the materials rearranged in order
Captions: A specific Arabic number (indicating the corresponding section of the material): The specific content of the caption
Closing: A closing statement at the end of the video, not exceeding 8 words
Music Recommendation: (Only provide the name of the music, no other words)"""

# Limites pedidos ao modelo; violações viram avisos
TITLE_MAX_WORDS = 5
CLOSING_MAX_WORDS = 8
CAPTION_MAX_WORDS = 20

# Prompt do juiz. Chaves literais do JSON estão duplicadas para str.format.
JUDGE_PROMPT = """You are an impartial judge tasked with evaluating the quality of edited video based on textual and visual elements. Your assessment should consider the overall coherence, creativity, and effectiveness of the content.
You will rate the quality of the output on multiple aspects such as Consistency of text and video, Logicality, Vividness, and Overall.

Evaluate

Aspects

Consistency of text and video: Rate the Consistency of text and video on how well the text aligns with the visuals in the video clip, according to the consistency between what is described in the text and what is presented visually. A score of 5 indicates complete alignment, while a score of 1 suggests significant inconsistency.

Logicality: Evaluate the logical flow of the text, examining how it contributes to a cohesive and sensible storyline. A score of 5 indicates a text that is logically sound, while a score of 1 suggests a lack of coherence and logic.

Vividness: Rate the Vividness on how well the text brings the video to life and enhances the viewer's experience. A score of 5 indicates highly vivid text, while a score of 1 suggests a lack of vividness and engagement.

Overall: Rate the overall assessment on how effectively the text and visuals work together to create a compelling and coherent story. A score of 5 indicates good integration, while a score of 1 suggests poor integration.

Format
Please rate the quality of the edited video by scoring it from 1 to 5 individually on each aspect.
- 1: strongly disagree
- 2: disagree
- 3: neutral
- 4: agree
- 5: strongly agree

Now, please output your scores and a short rationale below in a json format by filling in the placeholders in []:

{{
    "consistency of text and video": {{
        "reason": "[your rationale]",
        "score": "[score from 1 to 5]"
    }},
    "logicality": {{
        "reason": "[your rationale]",
        "score": "[score from 1 to 5]"
    }},
    "vividness": {{
        "reason": "[your rationale]",
        "score": "[score from 1 to 5]"
    }},
    "aesthetic": {{
        "reason": "[your rationale]",
        "score": "[score from 1 to 5]"
    }},
    "overall": {{
        "reason": "[your rationale]",
        "score": "[score from 1 to 5]"
    }}
}}

Material

The following is provided for your evaluation: an edited video, encompassing both the script within the video and a series of video frames.

Text Script:
{text}

Video Frames:
Video Frames are shown below.
{frames}"""
