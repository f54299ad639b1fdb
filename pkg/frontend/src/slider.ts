export interface SliderOptions {
    initial: number;
    onChange: (value: number) => void;
}

/** Imageability threshold control, 1..10. Fires on every input step; the
 *  view loader drops responses that a faster later step overtakes. */
export function renderSlider(container: HTMLElement, opts: SliderOptions): HTMLInputElement {
    container.textContent = "";
    container.classList.add("threshold");
    const label = document.createElement("label");
    label.textContent = "min score";
    const value = document.createElement("output");
    value.textContent = String(opts.initial);
    const input = document.createElement("input");
    input.type = "range";
    input.min = "1";
    input.max = "10";
    input.step = "1";
    input.value = String(opts.initial);
    input.addEventListener("input", () => {
        value.textContent = input.value;
        opts.onChange(Number(input.value));
    });
    container.append(label, input, value);
    return input;
}
